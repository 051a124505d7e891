"""Gershgorin-, Brauer- and Brualdi-type eigenvalue inclusion regions.

Rows are first cleared of denominators (the polynomial extension), after
which each region is a closed inequality between moduli of polynomials.
Every factor ``|z - M̄_ii(z)|`` is shrunk by a slack
``eps_i = 1e-9 (1 + |z|)^d_i`` before comparison, with ``d_i`` the largest
degree in row ``i``.  Because all three families test the same shrunk
factors, Brualdi ⊆ Brauer ⊆ Gershgorin holds exactly on any grid.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Cycle, WeightedDigraph, cycles, is_pi_class, scc
from .reduce import ReductionResult, reduce_closure
from .wfield import Poly, RootFindingError, poly_roots

__all__ = [
    "KINDS", "SLACK", "PolyExtension", "RegionSpec", "RasterGrid", "poly_extension",
    "region_specs", "member", "union_member", "raster", "auto_window", "outer_radius",
    "verify_improvement", "ImprovementReport", "boundary_strictness", "BoundaryReport",
    "boundary_points", "compare_regions",
]

KINDS = ("gershgorin", "brauer", "brualdi")
SLACK = 1e-9


@dataclass(frozen=True)
class PolyExtension:
    """Denominator-cleared rows of a graph.

    ``gap[i]`` is the polynomial ``z·L_i - L_i·M_ii`` (that is
    ``z - M̄_ii(z)``) and ``off[i][j]`` the off-diagonal entry ``L_i·M_ij``,
    where ``L_i`` is the product of the row's denominators.
    """

    graph: WeightedDigraph
    row_factors: tuple[Poly, ...]
    gap: tuple[Poly, ...]
    off: tuple[tuple[Poly, ...], ...]
    row_degree: tuple[int, ...]
    scc_mask: np.ndarray
    cycle_list: tuple[Cycle, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    def entry(self, i: int, j: int) -> Poly:
        """Entry of the extended matrix ``M̄``."""
        if i == j:
            return Poly.lam() - self.gap[i]
        return self.off[i][j]

    # pointwise quantities on arrays of points ------------------------------
    def slack(self, i: int, z: np.ndarray) -> np.ndarray:
        return SLACK * (1.0 + np.abs(z)) ** self.row_degree[i]

    def gap_abs(self, i: int, z: np.ndarray) -> np.ndarray:
        return np.abs(self.gap[i](z))

    def shrunk_gap(self, i: int, z: np.ndarray) -> np.ndarray:
        return np.maximum(self.gap_abs(i, z) - self.slack(i, z), 0.0)

    def _terms(self, i: int, z: np.ndarray) -> list[np.ndarray]:
        zero = np.zeros(np.shape(z))
        return [zero if (j == i or self.off[i][j].is_zero) else np.abs(self.off[i][j](z))
                for j in range(self.n)]

    def row_sum(self, i: int, z: np.ndarray) -> np.ndarray:
        """``r_i``: sum of off-diagonal moduli in row ``i``."""
        out = np.zeros(np.shape(z))
        for t in self._terms(i, z):
            out = out + t
        return out

    def scc_row_sum(self, i: int, z: np.ndarray) -> np.ndarray:
        """``r_i`` restricted to edges inside a strongly connected component.

        Terms outside the component are replaced by zero in the same
        summation order, so the result never exceeds :meth:`row_sum`.
        """
        out = np.zeros(np.shape(z))
        zero = np.zeros(np.shape(z))
        for j, t in enumerate(self._terms(i, z)):
            out = out + (t if self.scc_mask[i, j] else zero)
        return out


def poly_extension(g: WeightedDigraph, cycle_list: Sequence[Cycle] | None = None) -> PolyExtension:
    n = g.n
    lam = Poly.lam()
    factors, gaps, offs, degs = [], [], [], []
    for i in range(n):
        dens = [g[i, j].den for j in range(n)]
        L = Poly([1])
        for d in dens:
            L = L * d
        row = []
        for j in range(n):
            if j == i:
                row.append(Poly())
                continue
            w = g[i, j]
            if w.is_zero:
                row.append(Poly())
                continue
            p = w.num
            for l in range(n):
                if l != j:
                    p = p * dens[l]
            row.append(p)
        diag_num = g[i, i].num
        for l in range(n):
            if l != i:
                diag_num = diag_num * dens[l]
        gap = lam * L - diag_num
        factors.append(L)
        gaps.append(gap)
        offs.append(tuple(row))
        degs.append(int(max([max(gap.degree, 0)] + [max(p.degree, 0) for p in row])))
    dec = scc(g)
    mask = np.zeros((n, n), dtype=bool)
    for i, j in dec.scc_edges:
        if i != j:
            mask[i, j] = True
    cyc = tuple(cycle_list) if cycle_list is not None else tuple(cycles(g, decomposition=dec))
    return PolyExtension(g, tuple(factors), tuple(gaps), tuple(offs), tuple(degs), mask, cyc)


@dataclass(frozen=True)
class RegionSpec:
    """One subregion: ``("gershgorin", i)``, ``("brauer", (i, j))`` or ``("brualdi", cycle)``."""

    kind: str
    index: object

    def label(self) -> str:
        if self.kind == "gershgorin":
            return f"gershgorin:v{self.index + 1}"
        if self.kind == "brauer":
            i, j = self.index
            return f"brauer:v{i + 1},v{j + 1}"
        c = self.index
        return f"brualdi:{c.kind}:" + ",".join(f"v{v + 1}" for v in c.vertices)


def region_specs(ext: PolyExtension, kind: str) -> list[RegionSpec]:
    """All subregions of a family.

    A single-vertex graph has no Brauer pairs; its Brauer family is taken to
    be its Gershgorin family.
    """
    if kind == "gershgorin":
        return [RegionSpec(kind, i) for i in range(ext.n)]
    if kind == "brauer":
        if ext.n < 2:
            return [RegionSpec("gershgorin", 0)]
        return [RegionSpec(kind, (i, j)) for i, j in itertools.combinations(range(ext.n), 2)]
    if kind == "brualdi":
        return [RegionSpec(kind, c) for c in ext.cycle_list]
    raise ValueError(f"unknown region kind {kind!r}")


class _Evaluator:
    """Caches the per-row arrays on one set of points."""

    def __init__(self, ext: PolyExtension, z: np.ndarray):
        self.ext = ext
        self.z = z
        self._a: dict[int, np.ndarray] = {}
        self._r: dict[int, np.ndarray] = {}
        self._rt: dict[int, np.ndarray] = {}

    def a(self, i):
        if i not in self._a:
            self._a[i] = self.ext.shrunk_gap(i, self.z)
        return self._a[i]

    def r(self, i):
        if i not in self._r:
            self._r[i] = self.ext.row_sum(i, self.z)
        return self._r[i]

    def rt(self, i):
        if i not in self._rt:
            self._rt[i] = self.ext.scc_row_sum(i, self.z)
        return self._rt[i]

    def mask(self, spec: RegionSpec) -> np.ndarray:
        if spec.kind == "gershgorin":
            i = spec.index
            return self.a(i) <= self.r(i)
        if spec.kind == "brauer":
            i, j = spec.index
            if i == j:
                raise ValueError("brauer subregions need two distinct vertices")
            return self.a(i) * self.a(j) <= self.r(i) * self.r(j)
        if spec.kind == "brualdi":
            lhs = np.ones(np.shape(self.z))
            rhs = np.ones(np.shape(self.z))
            for v in spec.index.vertices:
                lhs = lhs * self.a(v)
                rhs = rhs * self.rt(v)
            return lhs <= rhs
        raise ValueError(f"unknown region kind {spec.kind!r}")

    def union(self, kind: str) -> np.ndarray:
        out = np.zeros(np.shape(self.z), dtype=bool)
        for s in region_specs(self.ext, kind):
            out |= self.mask(s)
        return out


def _ensure_ext(g) -> PolyExtension:
    return g if isinstance(g, PolyExtension) else poly_extension(g)


def member(ext, spec: RegionSpec, z: complex) -> bool:
    """Closed-inequality membership of one point, slack included."""
    ext = _ensure_ext(ext)
    return bool(_Evaluator(ext, np.array([complex(z)])).mask(spec)[0])


def union_member(ext, kind: str, z) -> np.ndarray | bool:
    """Membership in the union of a family at one point or an array of points."""
    ext = _ensure_ext(ext)
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    out = _Evaluator(ext, arr).union(kind)
    return bool(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


@dataclass(frozen=True)
class RasterGrid:
    """Membership masks at cell centres over a window.

    Masks have shape ``(ny, nx)``; row ``k`` is ``im = im_min + (k + 0.5)·dy``
    and column ``l`` is ``re = re_min + (l + 0.5)·dx``.
    """

    window: tuple[float, float, float, float]
    resolution: tuple[int, int]
    specs: tuple[RegionSpec, ...]
    masks: tuple[np.ndarray, ...]
    union: np.ndarray
    kind: str = ""
    slack: float = SLACK

    def points(self) -> np.ndarray:
        return grid_points(self.window, self.resolution)

    def cell_of(self, z: complex) -> tuple[int, int]:
        re0, re1, im0, im1 = self.window
        nx, ny = self.resolution
        col = int(np.floor((z.real - re0) / (re1 - re0) * nx))
        row = int(np.floor((z.imag - im0) / (im1 - im0) * ny))
        return min(max(row, 0), ny - 1), min(max(col, 0), nx - 1)


def grid_points(window, resolution) -> np.ndarray:
    re0, re1, im0, im1 = (float(x) for x in window)
    nx, ny = (int(x) for x in resolution)
    if nx < 2 or ny < 2:
        raise ValueError("raster resolution must be at least 2 x 2")
    if not (re1 > re0 and im1 > im0):
        raise ValueError("raster window must have positive width and height")
    dx = (re1 - re0) / nx
    dy = (im1 - im0) / ny
    xs = re0 + (np.arange(nx) + 0.5) * dx
    ys = im0 + (np.arange(ny) + 0.5) * dy
    return xs[None, :] + 1j * ys[:, None]


def raster(ext, specs: Sequence[RegionSpec] | str, window, resolution=(400, 400)) -> RasterGrid:
    """Evaluate subregions on a grid; ``specs`` may be a family name."""
    ext = _ensure_ext(ext)
    kind = ""
    if isinstance(specs, str):
        kind = specs
        specs = region_specs(ext, specs)
    z = grid_points(window, resolution)
    ev = _Evaluator(ext, z)
    masks = tuple(ev.mask(s) for s in specs)
    union = np.zeros(z.shape, dtype=bool)
    for m in masks:
        union |= m
    return RasterGrid(tuple(float(w) for w in window), (int(resolution[0]), int(resolution[1])),
                      tuple(specs), masks, union, kind)


# ---------------------------------------------------------------------------
# extent of a union


def _escape_radius(ext: PolyExtension) -> float:
    """A radius beyond which no Gershgorin-type inequality can hold."""
    best = 0.0
    for i in range(ext.n):
        gap = ext.gap[i]
        d = ext.row_degree[i]
        if gap.degree != d:
            return np.inf
        lead = abs(gap.lead)
        lower = np.abs(gap.c[:-1]) if gap.c.size > 1 else np.zeros(0)
        others = [np.abs(p.c) for j, p in enumerate(ext.off[i]) if j != i and not p.is_zero]
        R = 1.0
        for _ in range(200):
            tot = sum(c * R ** k for k, c in enumerate(lower))
            tot += sum(sum(c * R ** k for k, c in enumerate(o)) for o in others)
            tot += SLACK * (1 + R) ** d
            if lead * R ** d > tot:
                break
            R *= 2
        else:
            return np.inf
        best = max(best, R)
    return best


def outer_radius(ext, kind: str = "gershgorin", rays: int = 256, tol: float = 1e-6,
                 samples: int = 2048, centre: complex = 0j) -> float:
    """Largest ``|z - centre|`` over the union, by radial search.

    Each ray is sampled out to an escape radius; the outermost member sample
    is refined by bisection.  Roots of the row polynomials are included,
    which covers isolated member points missed by sampling.
    """
    ext = _ensure_ext(ext)
    cap = _escape_radius(ext)
    if not np.isfinite(cap):
        raise ValueError("region is unbounded; the graph has a weight with numerator degree above its denominator")
    best = 0.0
    for i in range(ext.n):
        if ext.gap[i].degree >= 1:
            for r in _safe_roots(ext.gap[i]):
                if union_member(ext, kind, r):
                    best = max(best, abs(r - centre))
    theta = 2 * np.pi * np.arange(rays) / rays
    dirs = np.exp(1j * theta)
    ts = np.linspace(0.0, cap + abs(centre), samples)
    z = centre + ts[None, :] * dirs[:, None]
    mem = union_member(ext, kind, z)
    hit = mem.any(axis=1)
    last = samples - 1 - np.argmax(mem[:, ::-1], axis=1)
    edge = hit & (last == samples - 1)
    if edge.any():
        best = max(best, float(ts[-1]))
    live = hit & ~edge
    if live.any():
        # bisect all rays at once between the outermost member sample and the next
        d = dirs[live]
        lo = ts[last[live]]
        hi = ts[last[live] + 1]
        while np.max(hi - lo) > tol:
            mid = 0.5 * (lo + hi)
            inside = union_member(ext, kind, centre + mid * d)
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
        best = max(best, float(np.max(hi)))
    return float(best)


def _safe_roots(p: Poly) -> list[complex]:
    try:
        return poly_roots(p).distinct
    except RootFindingError as e:
        return e.best.distinct


def auto_window(exts: Iterable, kind: str = "gershgorin", margin: float = 0.1,
                extra: Iterable[complex] = ()) -> tuple[float, float, float, float]:
    """Square window centred at 0 covering the unions of all given graphs."""
    R = 0.0
    for e in exts:
        R = max(R, outer_radius(_ensure_ext(e), kind, rays=128, samples=1024, tol=1e-3))
    for z in extra:
        R = max(R, abs(complex(z)))
    R = max(R, 1e-3) * (1 + margin)
    return (-R, R, -R, R)


# ---------------------------------------------------------------------------
# improvement checks


@dataclass
class ImprovementReport:
    kind: str
    keep: tuple[int, ...]
    preconditions_met: bool
    notes: list[str]
    window: tuple[float, float, float, float]
    resolution: tuple[int, int]
    original_cells: int
    reduced_cells: int
    violations: int
    reduction: ReductionResult | None = None

    @property
    def contained(self) -> bool:
        return self.violations == 0


def _brualdi_hypotheses(g: WeightedDigraph, keep: Sequence[int]) -> tuple[bool, list[str]]:
    from .graph import cycle_adjacency
    removed = [v for v in range(g.n) if v not in set(keep)]
    if len(removed) != 1:
        return False, ["brualdi improvement is stated for removing a single vertex"]
    v = removed[0]
    adj = cycle_adjacency(g, v)
    notes = []
    if adj.adjacent:
        notes.append(f"v{v + 1} has adjacent cycles: " + ", ".join(c.label() for c in adj.adjacent))
    if set(adj.admissible) != set(adj.through):
        bad = [c.label() for c in adj.through if c not in adj.admissible]
        notes.append(f"cycles through v{v + 1} fail the admissibility test: " + ", ".join(bad))
    return not notes, notes


def compare_regions(g: WeightedDigraph, reduced: WeightedDigraph, kind: str,
                    window=None, resolution=(400, 400)):
    """Rasters of both graphs on one grid and the cells in reduced but not original."""
    eg, er = poly_extension(g), poly_extension(reduced)
    if window is None:
        window = auto_window([eg, er])
    a = raster(eg, kind, window, resolution)
    b = raster(er, kind, window, resolution)
    return a, b, b.union & ~a.union


def verify_improvement(g: WeightedDigraph, keep: Sequence[int], kind: str,
                       window=None, resolution=(400, 400)) -> ImprovementReport:
    """Reduce onto ``keep`` and count cells where the reduced region is not inside the original."""
    keep = tuple(sorted(set(int(k) for k in keep)))
    notes: list[str] = []
    ok = True
    if not is_pi_class(g):
        ok = False
        notes.append("graph has a weight with numerator degree above its denominator")
    if kind == "brauer" and len(keep) < 2:
        ok = False
        notes.append("brauer improvement needs at least two kept vertices")
    if kind == "brualdi":
        good, more = _brualdi_hypotheses(g, keep)
        ok = ok and good
        notes += more
    red = reduce_closure(g, keep, check_pi=False)
    a, b, bad = compare_regions(g, red.graph, kind, window, resolution)
    return ImprovementReport(kind, keep, ok, notes, a.window, a.resolution,
                             int(a.union.sum()), int(b.union.sum()), int(bad.sum()), red)


def _diag_at_infinity(g: WeightedDigraph, i: int) -> complex:
    w = g[i, i]
    if w.is_zero or w.pi() < 0:
        return 0j
    if w.pi() == 0:
        return complex(w.num.lead / w.den.lead)
    return complex(np.inf)


def region_centre(ext: PolyExtension, i: int) -> complex:
    """Root of ``z - M̄_ii(z)`` closest to the diagonal weight's value at infinity."""
    target = _diag_at_infinity(ext.graph, i)
    if ext.gap[i].degree < 1:
        return target if np.isfinite(target) else 0j
    roots = _safe_roots(ext.gap[i])
    if not np.isfinite(target):
        target = 0j
    return min(roots, key=lambda r: (abs(r - target), r.real, r.imag))


def boundary_points(ext: PolyExtension, i: int, samples: int = 64, tol: float = 1e-12) -> np.ndarray:
    """Points on the boundary of Gershgorin subregion ``i``.

    Along each of ``samples`` rays from the region's centre, the first point
    where the row inequality stops holding is located by bisection.
    """
    spec = RegionSpec("gershgorin", i)
    c = region_centre(ext, i)
    cap = _escape_radius(ext) + abs(c)
    theta = 2 * np.pi * np.arange(samples) / samples
    dirs = np.exp(1j * theta)
    steps = np.linspace(0.0, cap, 4096)
    out = []
    for d in dirs:
        z = c + steps * d
        inside = _Evaluator(ext, z).mask(spec)
        outside = np.nonzero(~inside)[0]
        if outside.size == 0 or outside[0] == 0:
            continue
        lo, hi = steps[outside[0] - 1], steps[outside[0]]
        while hi - lo > tol * max(1.0, hi):
            mid = 0.5 * (lo + hi)
            if member(ext, spec, c + mid * d):
                lo = mid
            else:
                hi = mid
        out.append(c + 0.5 * (lo + hi) * d)
    return np.array(out, dtype=complex)


@dataclass
class BoundaryReport:
    keep: tuple[int, ...]
    sampled: int
    exposed: int
    in_reduced: int
    per_vertex: dict

    @property
    def fraction_excluded(self) -> float:
        return 1.0 - self.in_reduced / self.exposed if self.exposed else 1.0


def boundary_strictness(g: WeightedDigraph, keep: Sequence[int], samples: int = 64,
                        vertices: Sequence[int] | None = None) -> BoundaryReport:
    """Sample exposed boundary points of removed rows and test them against the reduced region.

    A boundary point of subregion ``i`` is exposed when it lies in no other
    subregion of the original graph.  Only finitely many exposed points can
    lie in the reduced graph's Gershgorin-type region.
    """
    keep = tuple(sorted(set(int(k) for k in keep)))
    ext = poly_extension(g)
    red = reduce_closure(g, keep, check_pi=False)
    rext = poly_extension(red.graph)
    removed = [v for v in range(g.n) if v not in keep] if vertices is None else list(vertices)
    sampled = exposed = hits = 0
    per = {}
    for i in removed:
        pts = boundary_points(ext, i, samples)
        sampled += len(pts)
        if len(pts) == 0:
            per[i] = (0, 0, 0)
            continue
        ev = _Evaluator(ext, pts)
        others = np.zeros(len(pts), dtype=bool)
        for j in range(g.n):
            if j != i:
                others |= ev.mask(RegionSpec("gershgorin", j))
        free = pts[~others]
        inside = union_member(rext, "gershgorin", free) if len(free) else np.zeros(0, dtype=bool)
        per[i] = (len(pts), len(free), int(np.sum(inside)))
        exposed += len(free)
        hits += int(np.sum(inside))
    return BoundaryReport(keep, sampled, exposed, hits, per)
