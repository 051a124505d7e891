"""Laplacians, spectral-radius bounds and structural-set suggestions."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
import numpy as np

from .graph import WeightedDigraph, is_pi_class
from .reduce import (NotPiClassError, NotStructuralError, ReductionResult, eliminate_vertex,
                     identity_result, merge_values, reduce_over, validate_structural)
from .regions import auto_window, outer_radius, poly_extension, raster, union_member
from .wfield import RationalFn

__all__ = [
    "laplacian", "estimate_rho", "RhoEstimate", "RhoLevel", "suggest_structural_sets",
    "Suggestion", "loopless_removal_set", "exposed_boundary_scores", "STRATEGIES",
]

STRATEGIES = ("loopless_first", "exposed_boundary", "exhaustive_small")


def _simple_degrees(g: WeightedDigraph) -> np.ndarray:
    if not g.is_constant:
        raise ValueError("combinatorial and normalized Laplacians need an unweighted simple graph")
    a = g.constant_matrix()
    if np.any(np.diag(a) != 0):
        raise ValueError("simple graphs have no loops")
    if not np.all((a == 0) | (a == 1)):
        raise ValueError("simple graphs have 0/1 adjacency")
    if not np.array_equal(a, a.T):
        raise ValueError("simple graphs are undirected (symmetric adjacency)")
    return a.real.sum(axis=1)


def laplacian(g: WeightedDigraph, kind: str = "combinatorial") -> WeightedDigraph:
    """Laplacian matrix as a graph.

    ``combinatorial``: degree on the diagonal, -1 for adjacent vertices.
    ``normalized``: 1 on the diagonal of non-isolated vertices,
    ``-1/sqrt(d_i d_j)`` for adjacent vertices.  ``generalized`` (any
    loop-free weighted digraph): ``-M_ij`` off the diagonal and the row sum
    of ``M`` on it.
    """
    n = g.n
    if kind == "combinatorial":
        d = _simple_degrees(g)
        a = g.constant_matrix().real
        return WeightedDigraph((np.diag(d) - a).tolist())
    if kind == "normalized":
        d = _simple_degrees(g)
        a = g.constant_matrix().real
        out = np.zeros((n, n))
        for i in range(n):
            if d[i]:
                out[i, i] = 1.0
            for j in range(n):
                if a[i, j]:
                    out[i, j] = -1.0 / math.sqrt(d[i] * d[j])
        return WeightedDigraph(out.tolist())
    if kind == "generalized":
        if any(not g[i, i].is_zero for i in range(n)):
            raise ValueError("the generalized Laplacian needs a loop-free graph")
        w = [[-g[i, j] if i != j else RationalFn() for j in range(n)] for i in range(n)]
        for i in range(n):
            s = RationalFn()
            for j in range(n):
                if j != i:
                    s = s + g[i, j]
            w[i][i] = s
        return WeightedDigraph(w)
    raise ValueError(f"unknown Laplacian kind {kind!r}")


# ---------------------------------------------------------------------------
# spectral radius


def loopless_removal_set(g: WeightedDigraph) -> list[int]:
    """Greedy maximal set of loopless vertices inducing no cycle, at least one vertex kept."""
    chosen: list[int] = []
    for v in range(g.n):
        if not g[v, v].is_zero or len(chosen) + 1 >= g.n:
            continue
        keep = [k for k in range(g.n) if k not in chosen and k != v]
        try:
            validate_structural(g, keep)
        except NotStructuralError:
            continue
        chosen.append(v)
    return chosen


@dataclass
class RhoLevel:
    level: int
    kept: tuple[int, ...]
    region_radius: float
    exceptional: tuple[complex, ...]
    bound: float


@dataclass
class RhoEstimate:
    """Upper bound on the spectral radius with the reductions that produced it.

    ``levels[k].bound`` is ``max(outer radius of the Gershgorin-type region
    of the level-k graph, max |retained exceptional value|)``; ``bound`` is
    the least of these.
    """

    bound: float
    levels: list[RhoLevel] = field(default_factory=list)
    certificate: list[tuple] = field(default_factory=list)


def _level_bound(res: ReductionResult, retained: tuple[complex, ...]) -> tuple[float, float]:
    rad = outer_radius(poly_extension(res.graph), "gershgorin")
    ex = max((abs(z) for z in retained), default=0.0)
    return rad, max(rad, ex)


def _retain(prev: WeightedDigraph, new_values, retained):
    keep = [z for z in new_values if union_member(prev, "gershgorin", z)]
    return merge_values(tuple(retained) + tuple(keep))


def estimate_rho(g: WeightedDigraph, levels: int = 1) -> RhoEstimate:
    """Bound the spectral radius by Gershgorin-type regions of successive reductions.

    Level 0 uses the graph itself.  Level 1 removes a maximal set of
    loopless vertices (exceptional set {0}, spectral radius unchanged).
    Each further level eliminates the single vertex giving the smallest
    bound.  Exceptional values from a step are retained when they lie in the
    previous graph's region, since they may be eigenvalues.
    """
    if not is_pi_class(g):
        raise NotPiClassError("spectral radius bounds need numerator degree <= denominator degree")
    res = identity_result(g)
    retained: tuple[complex, ...] = ()
    rad, b = _level_bound(res, retained)
    out = RhoEstimate(b, [RhoLevel(0, res.kept, rad, retained, b)], [(res.trace, "gershgorin", retained)])
    for level in range(1, levels + 1):
        cur = res.graph
        if cur.n <= 1:
            break
        if level == 1:
            removed = loopless_removal_set(cur)
            if not removed:
                continue
            step = reduce_over(cur, [k for k in range(cur.n) if k not in removed])
            nxt = res.then(step)
            ret = _retain(cur, step.exceptional, retained)
            rad, b = _level_bound(nxt, ret)
        else:
            best = None
            for v in range(cur.n):
                if cur[v, v].is_lambda():
                    continue
                step = eliminate_vertex(cur, v)
                cand = res.then(step)
                ret_c = _retain(cur, step.exceptional, retained)
                rad_c, b_c = _level_bound(cand, ret_c)
                if best is None or b_c < best[3] - 1e-12:
                    best = (cand, ret_c, rad_c, b_c)
            if best is None:
                break
            nxt, ret, rad, b = best
        res, retained = nxt, ret
        out.levels.append(RhoLevel(level, res.kept, rad, retained, b))
        out.certificate.append((res.trace, "gershgorin", retained))
        out.bound = min(out.bound, b)
    return out


# ---------------------------------------------------------------------------
# structural-set suggestions


@dataclass(frozen=True)
class Suggestion:
    keep: tuple[int, ...]
    score: float
    note: str = ""

    def removed_from(self, n: int) -> tuple[int, ...]:
        return tuple(v for v in range(n) if v not in self.keep)


def _is_structural(g, keep) -> bool:
    try:
        validate_structural(g, keep)
    except (NotStructuralError, ValueError):
        return False
    return True


def _loopless_first(g: WeightedDigraph, max_exhaustive: int = 12) -> list[Suggestion]:
    loopless = [v for v in range(g.n) if g[v, v].is_zero]
    cands: set[tuple[int, ...]] = set()
    if len(loopless) <= max_exhaustive:
        for k in range(1, len(loopless) + 1):
            for rem in itertools.combinations(loopless, k):
                keep = tuple(v for v in range(g.n) if v not in rem)
                if keep and _is_structural(g, keep):
                    cands.add(rem)
    else:
        greedy = tuple(loopless_removal_set(g))
        if greedy:
            cands.add(greedy)
        cands.update((v,) for v in loopless if _is_structural(g, [k for k in range(g.n) if k != v]))
    ranked = sorted(cands, key=lambda rem: (-len(rem), rem))
    return [Suggestion(tuple(v for v in range(g.n) if v not in rem), float(len(rem)),
                       "removes loopless vertices only") for rem in ranked]


def _boundary_cells(mask: np.ndarray) -> np.ndarray:
    pad = np.pad(mask, 1, constant_values=False)
    interior = pad[1:-1, 1:-1] & pad[:-2, 1:-1] & pad[2:, 1:-1] & pad[1:-1, :-2] & pad[1:-1, 2:]
    return mask & ~interior


def exposed_boundary_scores(g: WeightedDigraph, resolution=(256, 256), window=None) -> np.ndarray:
    """Raster estimate of each row region's boundary lying outside all other row regions."""
    ext = poly_extension(g)
    if window is None:
        window = auto_window([ext])
    grid = raster(ext, "gershgorin", window, resolution)
    scores = np.zeros(g.n)
    for i, m in enumerate(grid.masks):
        others = np.zeros_like(m)
        for j, mj in enumerate(grid.masks):
            if j != i:
                others |= mj
        scores[i] = float(np.sum(_boundary_cells(m) & ~others))
    return scores


def _exposed_boundary(g: WeightedDigraph, resolution=(256, 256)) -> list[Suggestion]:
    if g.n < 2:
        return []
    scores = exposed_boundary_scores(g, resolution)
    out = []
    for v in sorted(range(g.n), key=lambda k: (-scores[k], k)):
        keep = tuple(k for k in range(g.n) if k != v)
        if _is_structural(g, keep):
            out.append(Suggestion(keep, float(scores[v]), f"exposed boundary cells of row v{v + 1}"))
    return out


def _exhaustive_small(g: WeightedDigraph, limit: int = 12) -> list[Suggestion]:
    if g.n > limit:
        raise ValueError(f"exhaustive search is limited to {limit} vertices")
    out = []
    for k in range(1, g.n + 1):
        for keep in itertools.combinations(range(g.n), k):
            if _is_structural(g, keep):
                out.append(Suggestion(keep, float(k), "structural"))
    return out


def suggest_structural_sets(g: WeightedDigraph, strategy: str = "loopless_first", **kw) -> list[Suggestion]:
    """Ranked kept-vertex sets under one of :data:`STRATEGIES`."""
    if strategy == "loopless_first":
        return _loopless_first(g, **kw)
    if strategy == "exposed_boundary":
        return _exposed_boundary(g, **kw)
    if strategy == "exhaustive_small":
        return _exhaustive_small(g, **kw)
    raise ValueError(f"unknown strategy {strategy!r}")
