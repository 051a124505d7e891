"""Isospectral reductions over structural sets.

Reducing a graph onto a kept vertex set replaces every path through the
removed vertices by a single rational-function edge weight.  The spectrum
changes at most on the exceptional set: values where a removed vertex's
loop weight equals λ or has a pole.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import WeightedDigraph, is_pi_class
from .wfield import LAM, Poly, RationalFn, poly_roots

__all__ = [
    "StructuralSet", "Branch", "ReductionResult", "NotStructuralError",
    "NotPiClassError", "validate_structural", "branches", "branch_product",
    "reduce_over", "eliminate_vertex", "reduce_sequence", "reduce_closure",
    "exceptional_polys", "merge_values", "identity_result",
]

VALUE_TOL = 1e-6


class NotStructuralError(ValueError):
    """The kept set is not structural; ``witness`` explains why.

    ``witness`` is either ``("cycle", [vertices...])`` for a cycle among the
    removed vertices or ``("lambda_loop", v)`` for a removed vertex whose
    loop weight is identically λ.
    """

    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class NotPiClassError(ValueError):
    """Closure reductions need every weight to have numerator degree <= denominator degree."""


@dataclass(frozen=True)
class StructuralSet:
    keep: tuple[int, ...]
    removed: tuple[int, ...]


@dataclass(frozen=True)
class Branch:
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)


def merge_values(values: Iterable[complex], tol: float = VALUE_TOL) -> tuple[complex, ...]:
    """Deduplicate complex values within a relative tolerance, sorted by (re, im)."""
    out: list[complex] = []
    for v in values:
        v = complex(v)
        if all(abs(v - w) > tol * (1 + abs(w)) for w in out):
            out.append(v)
    return tuple(sorted(out, key=lambda z: (round(z.real, 9), round(z.imag, 9))))


@dataclass(frozen=True)
class ReductionResult:
    """Reduced graph plus bookkeeping.

    ``kept`` maps each vertex of ``graph`` to its index in the original
    graph.  ``exceptional`` is the accumulated exceptional set and
    ``exceptional_polys`` the polynomials whose roots define it.  ``trace``
    lists the kept sets applied, in original labels.
    """

    graph: WeightedDigraph
    kept: tuple[int, ...]
    exceptional: tuple[complex, ...] = ()
    exceptional_polys: tuple[Poly, ...] = ()
    trace: tuple[tuple[int, ...], ...] = ()
    pi_violations: tuple[tuple[int, ...], ...] = ()

    def then(self, other: "ReductionResult") -> "ReductionResult":
        """Compose with a reduction of ``self.graph``."""
        kept = tuple(self.kept[k] for k in other.kept)
        trace = self.trace + tuple(tuple(self.kept[k] for k in t) for t in other.trace)
        viol = self.pi_violations + tuple(tuple(self.kept[k] for k in t) for t in other.pi_violations)
        return ReductionResult(
            graph=other.graph,
            kept=kept,
            exceptional=merge_values(self.exceptional + other.exceptional),
            exceptional_polys=self.exceptional_polys + other.exceptional_polys,
            trace=trace,
            pi_violations=viol,
        )


def identity_result(g: WeightedDigraph) -> ReductionResult:
    return ReductionResult(graph=g, kept=tuple(range(g.n)))


def _find_cycle(adj: dict[int, list[int]]) -> list[int] | None:
    """Return one directed cycle (no loops) in ``adj`` or None."""
    colour = {v: 0 for v in adj}
    parent: dict[int, int] = {}
    for root in sorted(adj):
        if colour[root]:
            continue
        stack = [(root, iter(adj[root]))]
        colour[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if colour[w] == 0:
                    colour[w] = 1
                    parent[w] = v
                    stack.append((w, iter(adj[w])))
                    break
                if colour[w] == 1:
                    cyc = [v]
                    while cyc[-1] != w:
                        cyc.append(parent[cyc[-1]])
                    return cyc[::-1]
            else:
                colour[v] = 2
                stack.pop()
    return None


def validate_structural(g: WeightedDigraph, keep: Iterable[int]) -> StructuralSet:
    """Check that ``keep`` is a structural set of ``g``.

    The removed vertices must induce no cycle once loops are ignored, and no
    removed vertex may carry a loop weight identically equal to λ.
    """
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise ValueError("the kept vertex set must be nonempty")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise IndexError(f"kept vertices must lie in 0..{g.n - 1}")
    kept = set(keep)
    removed = tuple(v for v in range(g.n) if v not in kept)
    for v in removed:
        if g[v, v].is_lambda():
            raise NotStructuralError(
                f"removed vertex v{v + 1} has loop weight identically λ", ("lambda_loop", v))
    rem = set(removed)
    adj = {v: [w for w in g.successors(v) if w in rem and w != v] for v in removed}
    cyc = _find_cycle(adj)
    if cyc is not None:
        names = ",".join(f"v{v + 1}" for v in cyc)
        raise NotStructuralError(f"removed vertices contain the cycle {{{names}}}", ("cycle", cyc))
    return StructuralSet(keep, removed)


def branches(g: WeightedDigraph, s: StructuralSet, i: int, j: int) -> list[Branch]:
    """All paths (or cycles when ``i == j``) from ``i`` to ``j`` whose interior lies in the removed set."""
    rem = set(s.removed)
    out: list[Branch] = []
    path = [i]

    def walk(v):
        for w in g.successors(v):
            if w == j:
                out.append(Branch(tuple(path) + (j,)))
            if w in rem and w not in path:
                path.append(w)
                walk(w)
                path.pop()

    walk(i)
    return out


def branch_product(g: WeightedDigraph, b: Branch) -> RationalFn:
    """Edge weight carried by a branch: interior vertices contribute ``ω/(λ - loop)``."""
    vs = b.vertices
    if len(vs) < 2:
        raise ValueError("a branch has at least two vertices")
    out = g[vs[0], vs[1]]
    for k in range(1, len(vs) - 1):
        v = vs[k]
        gap = LAM - g[v, v]
        if gap.is_zero:
            raise ZeroDivisionError(f"loop weight at v{v + 1} is identically λ")
        out = out * g[v, vs[k + 1]] / gap
    return out


def exceptional_polys(g: WeightedDigraph, removed: Iterable[int]) -> list[Poly]:
    """Denominator of each removed loop weight and ``num - λ·den``."""
    out = []
    lam = Poly.lam()
    for v in removed:
        w = g[v, v]
        if w.den.degree > 0:
            out.append(w.den)
        out.append(w.num - lam * w.den)
    return out


def _roots_of(polys: Sequence[Poly]) -> tuple[complex, ...]:
    vals: list[complex] = []
    for p in polys:
        if p.degree >= 1:
            vals.extend(poly_roots(p).distinct)
    return merge_values(vals)


def reduce_over(g: WeightedDigraph, s: StructuralSet | Iterable[int]) -> ReductionResult:
    """Reduce ``g`` onto a structural set by summing branch products."""
    if not isinstance(s, StructuralSet):
        s = validate_structural(g, s)
    keep = s.keep
    w = [[RationalFn() for _ in keep] for _ in keep]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            total = RationalFn()
            for br in branches(g, s, i, j):
                total = total + branch_product(g, br)
            w[a][b] = total
    polys = exceptional_polys(g, s.removed)
    red = WeightedDigraph(w)
    viol = ((keep,) if is_pi_class(g) and not is_pi_class(red) else ())
    return ReductionResult(red, keep, _roots_of(polys), tuple(polys), (keep,), viol)


def eliminate_vertex(g: WeightedDigraph, v: int) -> ReductionResult:
    """Remove one vertex: ``ω_ij + ω_iv·ω_vj/(λ - ω_vv)`` on the others."""
    loop = g[v, v]
    if loop.is_lambda():
        raise NotStructuralError(f"vertex v{v + 1} has loop weight identically λ", ("lambda_loop", v))
    gap = LAM - loop
    keep = tuple(k for k in range(g.n) if k != v)
    if not keep:
        raise ValueError("cannot eliminate the only vertex")
    col = [g[i, v] / gap for i in keep]
    w = []
    for a, i in enumerate(keep):
        row = []
        for j in keep:
            x = g[i, j]
            if not col[a].is_zero and not g[v, j].is_zero:
                x = x + col[a] * g[v, j]
            row.append(x)
        w.append(row)
    polys = exceptional_polys(g, [v])
    red = WeightedDigraph(w)
    viol = ((keep,) if is_pi_class(g) and not is_pi_class(red) else ())
    return ReductionResult(red, keep, _roots_of(polys), tuple(polys), (keep,), viol)


def reduce_sequence(g: WeightedDigraph, keeps: Sequence[Iterable[int]]) -> ReductionResult:
    """Apply reductions one after another; each kept set uses original labels."""
    res = identity_result(g)
    for keep in keeps:
        pos = {orig: k for k, orig in enumerate(res.kept)}
        try:
            local = [pos[int(v)] for v in keep]
        except KeyError as e:
            raise ValueError(f"vertex v{e.args[0] + 1} was already removed") from None
        res = res.then(reduce_over(res.graph, local))
    return res


def _elimination_key(g: WeightedDigraph, v: int):
    deg = sum(1 for j in range(g.n) if j != v and g.has_edge(v, j)) + \
        sum(1 for i in range(g.n) if i != v and g.has_edge(i, v))
    return (0 if g[v, v].is_zero else 1, deg, v)


def reduce_closure(g: WeightedDigraph, keep: Iterable[int], *, check_pi: bool = True) -> ReductionResult:
    """Reduce onto ``keep`` by eliminating one vertex at a time.

    For graphs whose weights all have numerator degree at most the
    denominator degree the result does not depend on the order.  Loop-free
    vertices go first, then those of least degree, ties by index.  Steps
    whose output leaves that class are recorded in ``pi_violations`` and
    reported with a warning.
    """
    if check_pi and not is_pi_class(g):
        raise NotPiClassError("closure reduction requires numerator degree <= denominator degree for every weight")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("the kept vertex set must be nonempty")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise IndexError(f"kept vertices must lie in 0..{g.n - 1}")
    res = identity_result(g)
    kept = set(keep)
    while len(res.kept) > len(keep):
        cur = res.graph
        cands = [k for k, orig in enumerate(res.kept)
                 if orig not in kept and not cur[k, k].is_lambda()]
        if not cands:
            left = [f"v{o + 1}" for o in res.kept if o not in kept]
            raise NotStructuralError(
                f"no eliminable vertex among {', '.join(left)}", ("lambda_loop", left))
        v = min(cands, key=lambda k: _elimination_key(cur, k))
        res = res.then(eliminate_vertex(cur, v))
    if res.pi_violations:
        warnings.warn("reduction left the degree class at some step", RuntimeWarning, stacklevel=2)
    return res
