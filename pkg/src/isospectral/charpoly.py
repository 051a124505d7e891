"""Characteristic polynomials over the rational-function field."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import WeightedDigraph
from .reduce import StructuralSet, reduce_over, validate_structural
from .wfield import LAM, Poly, RationalFn, SpectrumList, poly_roots

__all__ = ["CharPoly", "char_poly", "determinant", "spectrum", "verify_prop1", "Prop1Report"]

LAPLACE_MAX_N = 8


@dataclass(frozen=True)
class CharPoly:
    """``det(M(λ) - λI)`` in lowest terms."""

    value: RationalFn

    @property
    def num(self) -> Poly:
        return self.value.num

    @property
    def den(self) -> Poly:
        return self.value.den

    def __str__(self):
        return str(self.value)


def _det_laplace(m: list[list[RationalFn]]) -> RationalFn:
    # expansion along successive rows, memoised on the set of unused columns
    n = len(m)
    memo: dict[int, RationalFn] = {}

    def minor(row: int, cols: int) -> RationalFn:
        if row == n:
            return RationalFn(1)
        if cols in memo:
            return memo[cols]
        total = RationalFn()
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            a = m[row][c]
            if not a.is_zero:
                sub = minor(row + 1, cols & ~(1 << c))
                if not sub.is_zero:
                    term = a * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def _pivot_key(w: RationalFn):
    return (max(w.num.degree, 0), w.num.norm())


def _det_bareiss(m: list[list[RationalFn]]) -> RationalFn:
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = RationalFn(1)
    for k in range(n - 1):
        cands = [r for r in range(k, n) if not a[r][k].is_zero]
        if not cands:
            return RationalFn()
        p = max(cands, key=lambda r: (_pivot_key(a[r][k]), -r))
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) / prev
            a[i][k] = RationalFn()
        prev = piv
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(m: list[list[RationalFn]]) -> RationalFn:
    """Determinant over the field: cofactor expansion up to size 8, Bareiss above."""
    n = len(m)
    if n == 0:
        return RationalFn(1)
    if n <= LAPLACE_MAX_N:
        return _det_laplace(m)
    return _det_bareiss(m)


def char_poly(g: WeightedDigraph) -> CharPoly:
    """``det(M(G, λ) - λI)``."""
    m = [[g[i, j] - LAM if i == j else g[i, j] for j in range(g.n)] for i in range(g.n)]
    return CharPoly(determinant(m))


def spectrum(g: WeightedDigraph, tol: float = 1e-6) -> SpectrumList:
    """Eigenvalues with multiplicity: roots of the reduced characteristic numerator."""
    cp = char_poly(g)
    if cp.num.is_zero:
        raise ValueError("characteristic function vanishes identically")
    if cp.num.degree == 0:
        return SpectrumList(())
    return poly_roots(cp.num, tol)


@dataclass(frozen=True)
class Prop1Report:
    ok: bool
    residual: float
    lhs: RationalFn
    rhs: RationalFn


def verify_prop1(g: WeightedDigraph, s: StructuralSet | list[int], tol: float = 1e-8) -> Prop1Report:
    """Check ``charpoly(G) / prod(loop_v - λ) == charpoly(reduced G)`` over removed ``v``.

    Compared by cross-multiplication so that no division is performed.
    """
    if not isinstance(s, StructuralSet):
        s = validate_structural(g, s)
    big = char_poly(g).value
    small = char_poly(reduce_over(g, s).graph).value
    div = RationalFn(1)
    for v in s.removed:
        div = div * (g[v, v] - LAM)
    # big / div == small  <=>  big.num * div.den * small.den == small.num * big.den * div.num
    left = big.num * div.den * small.den
    right = small.num * big.den * div.num
    diff = (left - right).norm()
    scale = max(left.norm(), right.norm(), 1e-300)
    res = diff / scale
    return Prop1Report(bool(res < tol), float(res), big / div, small)
