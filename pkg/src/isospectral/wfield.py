"""Complex polynomials and the field of complex rational functions.

Coefficients are stored as ``complex128`` arrays in ascending degree.  All
objects are immutable; arithmetic returns new objects.  Rational functions
cancel common factors by testing the numerator at the (tracked) roots of
the denominator; :func:`poly_gcd` offers a tolerance-verified Euclidean gcd
for standalone use.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "NEG_INF", "POLE", "COEFF_TOL", "GCD_TOL", "EVAL_TOL",
    "Poly", "RationalFn", "SpectrumList", "RootFindingError",
    "poly_arith", "poly_gcd", "divrem", "rat_arith", "rat_eval", "poly_roots",
    "as_rational", "LAM",
]

NEG_INF = float("-inf")

COEFF_TOL = 1e-12
GCD_TOL = 1e-9
EVAL_TOL = 1e-12
ROOT_TOL = 1e-12
ROOT_MAXITER = 500
CLUSTER_TOL = 1e-6


class _Pole:
    """Marker returned when a rational function is evaluated at a pole."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"

    def __bool__(self):
        return False


POLE = _Pole()


class RootFindingError(ArithmeticError):
    """Simultaneous iteration failed to reach the residual target.

    ``best`` holds the last iterate so callers can still inspect it.
    """

    def __init__(self, msg, best):
        super().__init__(msg)
        self.best = best


def _clean(c: np.ndarray, scale: float | None) -> np.ndarray:
    if not np.all(np.isfinite(c)):
        raise ValueError("polynomial coefficients must be finite")
    s = float(np.max(np.abs(c))) if c.size else 0.0
    if scale is not None:
        s = max(s, float(scale))
    if s == 0.0:
        return np.zeros(0, dtype=complex)
    tol = COEFF_TOL * s
    re = np.where(np.abs(c.real) <= tol, 0.0, c.real)
    im = np.where(np.abs(c.imag) <= tol, 0.0, c.imag)
    c = re + 1j * im
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        return np.zeros(0, dtype=complex)
    return c[: nz[-1] + 1]


class Poly:
    """Polynomial in one complex variable, coefficients ascending by degree.

    ``scale`` widens the reference magnitude used when dropping negligible
    coefficients; arithmetic passes the operands' magnitude so that
    cancellation residue is removed.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray = (), *, scale: float | None = None):
        c = np.array(coeffs, dtype=complex).ravel()
        c = _clean(c, scale)
        c.flags.writeable = False
        self.c = c

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, value: complex) -> "Poly":
        return cls([value])

    @classmethod
    def lam(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[complex]) -> "Poly":
        c = np.array([1], dtype=complex)
        for r in roots:
            c = np.convolve(c, [-r, 1])
        return cls(c)

    # basic properties -----------------------------------------------------
    @property
    def degree(self):
        return NEG_INF if self.c.size == 0 else self.c.size - 1

    @property
    def is_zero(self) -> bool:
        return self.c.size == 0

    @property
    def lead(self) -> complex:
        return complex(self.c[-1]) if self.c.size else 0j

    def norm(self) -> float:
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def valuation(self) -> int:
        """Multiplicity of the root at zero."""
        if self.is_zero:
            raise ValueError("valuation of the zero polynomial")
        return int(np.nonzero(self.c)[0][0])

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return Poly(self.c / self.c[-1])

    def derivative(self) -> "Poly":
        if self.c.size <= 1:
            return Poly()
        return Poly(self.c[1:] * np.arange(1, self.c.size))

    def shift(self, k: int) -> "Poly":
        """Multiply by λ^k (k >= 0) or drop the k lowest terms (k < 0)."""
        if self.is_zero:
            return self
        if k >= 0:
            return Poly(np.concatenate([np.zeros(k, dtype=complex), self.c]))
        return Poly(self.c[-k:])

    def __call__(self, z):
        if self.is_zero:
            return np.zeros_like(np.asarray(z), dtype=complex) if np.ndim(z) else 0j
        out = np.polyval(self.c[::-1], z)
        return complex(out) if np.ndim(out) == 0 else out

    # arithmetic -----------------------------------------------------------
    def __neg__(self):
        return Poly(-self.c)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(self.c.size, other.c.size)
        out = np.zeros(n, dtype=complex)
        out[: self.c.size] += self.c
        out[: other.c.size] += other.c
        return Poly(out, scale=max(self.norm(), other.norm()))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        return Poly(np.convolve(self.c, other.c), scale=self.norm() * other.norm())

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        return divrem(self, _as_poly(other))

    def close(self, other: "Poly", tol: float = GCD_TOL) -> bool:
        """Coefficientwise agreement within ``tol * (1 + max modulus)``."""
        other = _as_poly(other)
        n = max(self.c.size, other.c.size)
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: self.c.size] = self.c
        b[: other.c.size] = other.c
        scale = 1.0 + max(self.norm(), other.norm())
        return bool(np.all(np.abs(a - b) <= tol * scale)) if n else True

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.c.shape == other.c.shape and bool(np.all(self.c == other.c))

    def __hash__(self):
        return hash(self.c.tobytes())

    def __repr__(self):
        return f"Poly({_fmt_poly(self.c)})"

    def __str__(self):
        return _fmt_poly(self.c)


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return Poly([x])
    return NotImplemented


def _fmt_num(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.12g}"
    if z.real == 0:
        return f"{z.imag:.12g}i"
    return f"({z.real:.12g}{z.imag:+.12g}i)"


def _fmt_poly(c: np.ndarray, var: str = "λ") -> str:
    if c.size == 0:
        return "0"
    terms = []
    for k in range(c.size - 1, -1, -1):
        a = complex(c[k])
        if a == 0:
            continue
        if k == 0:
            mono = _fmt_num(a)
        else:
            p = var if k == 1 else f"{var}^{k}"
            if a == 1:
                mono = p
            elif a == -1:
                mono = "-" + p
            else:
                mono = _fmt_num(a) + p
        terms.append(mono)
    s = " + ".join(terms)
    return s.replace("+ -", "- ")


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Polynomial long division: ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero or a.degree < b.degree:
        return Poly(), a
    da, db = a.c.size - 1, b.c.size - 1
    r = a.c.copy()
    q = np.zeros(da - db + 1, dtype=complex)
    lead = b.c[-1]
    for k in range(da - db, -1, -1):
        coef = r[k + db] / lead
        q[k] = coef
        r[k: k + db + 1] -= coef * b.c
    q = Poly(q)
    scale = max(a.norm(), q.norm() * b.norm())
    return q, Poly(r[:db], scale=scale)


def poly_arith(a: Poly, b: Poly, op: str):
    """Dispatch ``add``, ``sub``, ``mul`` or ``divrem`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divrem(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def _divides(g: Poly, p: Poly, tol: float) -> bool:
    q, r = divrem(p, g)
    scale = max(p.norm(), q.norm() * g.norm())
    return r.norm() <= tol * scale


def _strip_zero_root(p: Poly) -> tuple[Poly, int]:
    k = p.valuation()
    return (p.shift(-k), k) if k else (p, 0)


def poly_gcd(a: Poly, b: Poly, tol: float = GCD_TOL) -> Poly:
    """Monic greatest common divisor under a relative remainder tolerance.

    Powers of λ are split off exactly.  The remaining candidates are the
    remainders of the Euclidean sequence; the highest-degree candidate that
    divides both inputs (remainder below ``tol`` relative to the operands)
    is returned.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    a1, ka = _strip_zero_root(a)
    b1, kb = _strip_zero_root(b)
    zero_part = Poly.lam() ** min(ka, kb)
    if a1.degree == 0 or b1.degree == 0:
        return zero_part
    return (zero_part * _euclid_gcd(a1, b1, tol)).monic()


def _euclid_gcd(a: Poly, b: Poly, tol: float) -> Poly:
    r0, r1 = (a.monic(), b.monic()) if a.degree >= b.degree else (b.monic(), a.monic())
    candidates = []
    while not r1.is_zero and r1.degree >= 1:
        candidates.append(r1)
        _, r = divrem(r0, r1)
        if r.norm() <= tol * r0.norm():
            break
        r0, r1 = r1, r.monic()
    for g in candidates:
        if _divides(g, a, tol) and _divides(g, b, tol):
            return g
    return Poly([1])


# ---------------------------------------------------------------------------
# rational functions


class RationalFn:
    """Element ``num/den`` of the rational-function field.

    Canonical form: lowest terms, monic denominator, zero is ``0/1``.

    The roots of the denominator travel with the value.  A common factor of
    a sum, product or quotient can only sit at a root of the operands'
    denominators (or of a divisor's numerator), so cancellation tests the
    numerator at those known points and deflates both polynomials.  This
    stays reliable at degrees where a floating Euclidean gcd loses track.
    """

    __slots__ = ("num", "den", "_roots")

    def __init__(self, num=0, den=1, *, reduce: bool = True, roots=None):
        num = num if isinstance(num, Poly) else Poly(np.atleast_1d(num))
        den = den if isinstance(den, Poly) else Poly(np.atleast_1d(den))
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if roots is not None and len(roots) != max(den.degree, 0):
            roots = None
        if num.is_zero:
            num, den, roots = Poly(), Poly([1]), ()
        elif den.degree == 0:
            roots = ()
        elif reduce and num.degree > 0:
            if roots is None:
                roots = _root_list(den)
            num, den, roots = _cancel(num, den, roots)
        lc = den.lead
        if lc != 1:
            num = Poly(num.c / lc)
            den = Poly(den.c / lc)
        self.num = num
        self.den = den
        self._roots = None if roots is None else tuple(roots)

    @property
    def den_roots(self) -> tuple[complex, ...]:
        """Roots of the denominator, repeated by multiplicity."""
        if self._roots is None:
            self._roots = _root_list(self.den)
        return self._roots

    @classmethod
    def const(cls, value: complex) -> "RationalFn":
        return cls(Poly([value]))

    @classmethod
    def lam(cls) -> "RationalFn":
        return cls(Poly.lam())

    # properties -----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def pi(self):
        """Degree of the numerator minus degree of the denominator."""
        if self.is_zero:
            return NEG_INF
        return self.num.degree - self.den.degree

    def is_lambda(self, tol: float = GCD_TOL) -> bool:
        """True when the function is identically λ."""
        return self.den.degree == 0 and self.num.close(Poly.lam(), tol)

    def constant_value(self) -> complex:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return complex(self.num.c[0]) if self.num.c.size else 0j

    def __call__(self, z):
        """Vectorised evaluation; poles give ``inf`` (no pole detection)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.num(z) / self.den(z)

    # arithmetic -----------------------------------------------------------
    def __neg__(self):
        return RationalFn(-self.num, self.den, reduce=False, roots=self._roots)

    def __add__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den, roots=self.den_roots)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den,
                          roots=self.den_roots + other.den_roots)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalFn()
        return RationalFn(self.num * other.num, self.den * other.den,
                          roots=self.den_roots + other.den_roots)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num,
                          roots=self.den_roots + _root_list(other.num))

    def __rtruediv__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalFn(1) / self ** (-k)
        return RationalFn(self.num ** k, self.den ** k, reduce=False, roots=self.den_roots * k)

    # comparison -----------------------------------------------------------
    def close(self, other, tol: float = GCD_TOL) -> bool:
        """Coefficientwise comparison of canonical forms."""
        other = as_rational(other)
        return self.num.close(other.num, tol) and self.den.close(other.den, tol)

    def __eq__(self, other):
        other = as_rational(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"



def _root_list(p: Poly) -> tuple[complex, ...]:
    """Roots repeated by multiplicity; exact zeros for powers of λ."""
    if p.is_zero or p.degree < 1:
        return ()
    core, k = _strip_zero_root(p)
    out = [0j] * k
    if core.degree >= 1:
        try:
            spec = poly_roots(core, np.inf)
        except RootFindingError as e:  # pragma: no cover - tol=inf never raises
            spec = e.best
        out.extend(spec.values)
    return tuple(out)


def _vanishes(p: Poly, r: complex) -> bool:
    if p.degree < 1:
        return False
    if r == 0:
        return abs(p.c[0]) <= 10 * COEFF_TOL * p.norm()
    pw = np.abs(r) ** np.arange(p.c.size)
    scale = float(np.sum(np.abs(p.c) * pw))
    return abs(p(r)) <= GCD_TOL * scale + 10 * COEFF_TOL * p.norm()


def _deflate(p: Poly, r: complex) -> Poly:
    """Quotient of ``p`` by ``λ - r``, dropping the (negligible) remainder."""
    c = p.c
    d = c.size - 1
    if r == 0:
        return Poly(c[1:])
    q = np.zeros(d, dtype=complex)
    if abs(r) <= 1:
        q[d - 1] = c[d]
        for k in range(d - 1, 0, -1):
            q[k - 1] = c[k] + r * q[k]
    else:
        q[0] = -c[0] / r
        for k in range(1, d):
            q[k] = (q[k - 1] - c[k]) / r
    return Poly(q)


def _cancel(num: Poly, den: Poly, roots):
    kept = []
    for r in roots:
        if num.degree >= 1 and _vanishes(num, r):
            num = _deflate(num, r)
            den = _deflate(den, r)
        else:
            kept.append(r)
    return num, den, kept


def as_rational(x, strict: bool = True):
    """Coerce numbers and polynomials to :class:`RationalFn`."""
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, Poly):
        return RationalFn(x)
    if isinstance(x, (int, float, complex, np.number)):
        return RationalFn(Poly([x]))
    if strict:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return NotImplemented


LAM = RationalFn.lam()


def rat_arith(a: RationalFn, b: RationalFn, op: str) -> RationalFn:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def rat_eval(w: RationalFn, z: complex):
    """Evaluate at one point; return :data:`POLE` where the denominator vanishes."""
    z = complex(z)
    d = w.den(z)
    deg = max(w.den.degree, 0)
    if abs(d) < EVAL_TOL * w.den.norm() * (1.0 + abs(z)) ** deg:
        return POLE
    return complex(w.num(z) / d)


# ---------------------------------------------------------------------------
# roots


@dataclass(frozen=True)
class SpectrumList:
    """Distinct values with multiplicities, ordered by (real, imag)."""

    entries: tuple[tuple[complex, int], ...] = ()

    @classmethod
    def from_values(cls, values: Iterable[complex], radius: float | None = None) -> "SpectrumList":
        vals = [complex(v) for v in values]
        if not vals:
            return cls(())
        if radius is None:
            radius = CLUSTER_TOL * (1.0 + max(abs(v) for v in vals))
        return cls(tuple(_sorted_entries(_cluster(np.array(vals), radius))))

    @property
    def values(self) -> list[complex]:
        """The list with each value repeated by its multiplicity."""
        out = []
        for v, m in self.entries:
            out.extend([v] * m)
        return out

    @property
    def distinct(self) -> list[complex]:
        return [v for v, _ in self.entries]

    def __len__(self):
        return sum(m for _, m in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def without(self, excluded: Iterable[complex], tol: float = 1e-6) -> "SpectrumList":
        """Drop every entry whose value lies within ``tol`` of an excluded value."""
        excluded = [complex(e) for e in excluded]
        keep = [(v, m) for v, m in self.entries
                if all(abs(v - e) > tol * (1 + abs(e)) for e in excluded)]
        return SpectrumList(tuple(keep))

    def max_modulus(self) -> float:
        return max((abs(v) for v, _ in self.entries), default=0.0)


def _cluster(z: np.ndarray, radius: float) -> list[tuple[complex, int]]:
    n = len(z)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        out.append((complex(np.mean(z[members])), len(members)))
    return out


def _tidy(v: complex, scale: float) -> complex:
    tol = 1e-13 * (1.0 + scale)
    re = 0.0 if abs(v.real) <= tol else v.real
    im = 0.0 if abs(v.imag) <= tol else v.imag
    return complex(re, im)


def _sorted_entries(entries):
    scale = max((abs(v) for v, _ in entries), default=0.0)
    entries = [(_tidy(v, scale), m) for v, m in entries]
    return sorted(entries, key=lambda e: (round(e[0].real, 9), round(e[0].imag, 9)))


def _aberth(c: np.ndarray, maxiter: int, tol: float) -> tuple[np.ndarray, bool]:
    n = c.size - 1
    monic = c / c[-1]
    radius = 1.0 + float(np.max(np.abs(monic[:-1])))
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    pc = monic[::-1]
    dc = np.polyder(pc)
    off = ~np.eye(n, dtype=bool)
    converged = False
    for _ in range(maxiter):
        p = np.polyval(pc, z)
        dp = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            inv = np.where(off, 1.0 / np.where(off, diff, 1.0), 0.0)
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        w = np.where(p == 0, 0.0, w)
        z = z - w
        if np.all(np.abs(w) <= tol * (1.0 + np.abs(z))):
            converged = True
            break
    return z, converged


def _spread(m: int, scale: float) -> float:
    """Typical scatter of floating iterates around an m-fold root."""
    return 4.0 * np.finfo(float).eps ** (1.0 / m) * scale


def _merge_multiple(p: Poly, entries):
    """Merge nearby clusters when together they look like one multiple root.

    Iterates near an m-fold root scatter by about eps**(1/m), which exceeds
    the clustering radius for m >= 3.  A group grows only while its members
    stay within that m-dependent spread of the group mean.
    """
    if len(entries) < 2:
        return entries
    scale = 1.0 + max(abs(v) for v, _ in entries)
    pts = [complex(v) for v, _ in entries]
    mult = [m for _, m in entries]
    used = [False] * len(pts)
    out = []
    for i in range(len(pts)):
        if used[i]:
            continue
        near = sorted((j for j in range(len(pts)) if not used[j]),
                      key=lambda k: abs(pts[k] - pts[i]))
        best = [i]
        for k in range(2, min(len(near), 8) + 1):
            group = near[:k]
            m = sum(mult[g] for g in group)
            centre = sum(pts[g] * mult[g] for g in group) / m
            if max(abs(pts[g] - centre) for g in group) <= _spread(m, scale):
                best = group
        for g in best:
            used[g] = True
        m = sum(mult[g] for g in best)
        out.append((sum(pts[g] * mult[g] for g in best) / m, m))
    return out


def _polish(p: Poly, v: complex, m: int, steps: int = 4) -> complex:
    """Newton steps on the (m-1)-th derivative, where an m-fold root is simple."""
    if v == 0:
        return v
    d = p
    for _ in range(m - 1):
        d = d.derivative()
    dd = d.derivative()
    best, best_res = v, abs(d(v))
    z = v
    for _ in range(steps):
        slope = dd(z)
        if slope == 0:
            break
        z = z - d(z) / slope
        res = abs(d(z))
        if res < best_res:
            best, best_res = z, res
    limit = max(CLUSTER_TOL, _spread(m, 1.0)) * (1 + abs(v))
    return best if abs(best - v) <= limit else v


def poly_roots(p: Poly, tol: float = 1e-6, *, maxiter: int = ROOT_MAXITER) -> SpectrumList:
    """All roots with multiplicity via Aberth-Ehrlich simultaneous iteration.

    Roots closer than ``1e-6 * (1 + max|root|)`` are merged (their mean is
    kept, which is far more accurate than the individual iterates near a
    multiple root).  Raises :class:`RootFindingError` when a merged root
    leaves a residual ``|p(r)| >= tol * |p|``.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no finite root list")
    core, k = _strip_zero_root(p)
    found: list[complex] = [0j] * k
    if core.degree >= 1:
        z, converged = _aberth(core.c, maxiter, ROOT_TOL)
        found.extend(complex(x) for x in z)
    if not found:
        return SpectrumList(())
    spec = SpectrumList.from_values(found)
    entries = _merge_multiple(p, list(spec.entries))
    spec = SpectrumList(tuple(_sorted_entries(
        [(_polish(p, v, m), m) for v, m in entries])))
    scale = float(np.sum(np.abs(p.c)))
    for v, _ in spec.entries:
        res = abs(p(v)) / (scale * max(1.0, abs(v)) ** max(p.degree, 0))
        if res >= tol:
            raise RootFindingError(
                f"root finder did not converge (residual {res:.3g} at {v})", spec)
    return spec
