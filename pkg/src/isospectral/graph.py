"""Weighted digraphs with rational-function edge weights.

A graph on ``n`` vertices is stored as its dense ``n x n`` weight matrix;
entry ``(i, j)`` is the weight of the edge from vertex ``i`` to vertex ``j``
and a zero weight means the edge is absent.  Vertices are 0-based here and
printed 1-based (``v1``, ``v2``, ...) by the command-line front end.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .wfield import Poly, RationalFn, as_rational

__all__ = [
    "WeightedDigraph", "SccDecomposition", "Cycle", "CycleOverflowError",
    "from_matrix", "normalize_input", "scc", "cycles", "is_pi_class",
    "cycle_adjacency", "CycleAdjacency", "DEFAULT_CYCLE_CAP",
]

DEFAULT_CYCLE_CAP = 10 ** 6


class CycleOverflowError(RuntimeError):
    """Raised when cycle enumeration exceeds the configured cap."""


def _entry(x) -> RationalFn:
    if isinstance(x, (RationalFn, Poly)):
        return as_rational(x)
    if isinstance(x, tuple) and len(x) == 2:
        num, den = (Poly(np.atleast_1d(c)) if not isinstance(c, Poly) else c for c in x)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        return RationalFn(num, den)
    return as_rational(complex(x))


class WeightedDigraph:
    """Weighted digraph; doubles as a square matrix over the rational functions."""

    __slots__ = ("weights", "_edges")

    def __init__(self, weights: Sequence[Sequence[RationalFn]]):
        rows = tuple(tuple(_entry(w) for w in row) for row in weights)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("adjacency matrix must be square")
        self.weights = rows
        self._edges = None

    @property
    def n(self) -> int:
        return len(self.weights)

    def __getitem__(self, ij) -> RationalFn:
        i, j = ij
        return self.weights[i][j]

    def __len__(self):
        return self.n

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` pairs in row-major order, loops included."""
        if self._edges is None:
            self._edges = [(i, j) for i in range(self.n) for j in range(self.n)
                           if not self.weights[i][j].is_zero]
        return list(self._edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def successors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if not self.weights[i][j].is_zero]

    def has_edge(self, i: int, j: int) -> bool:
        return not self.weights[i][j].is_zero

    def adjacency_pattern(self) -> np.ndarray:
        """Boolean matrix of nonzero weights."""
        return np.array([[not w.is_zero for w in row] for row in self.weights], dtype=bool).reshape(self.n, self.n)

    @property
    def is_constant(self) -> bool:
        return all(w.is_constant for row in self.weights for w in row)

    def constant_matrix(self) -> np.ndarray:
        """Complex matrix of a graph whose weights are all constants."""
        return np.array([[w.constant_value() for w in row] for row in self.weights],
                        dtype=complex).reshape(self.n, self.n)

    def evaluate(self, z: complex) -> np.ndarray:
        """Numeric matrix at ``z`` (poles give ``inf``)."""
        return np.array([[w(z) for w in row] for row in self.weights],
                        dtype=complex).reshape(self.n, self.n)

    def max_degree(self) -> int:
        """Largest numerator or denominator degree among the weights."""
        d = 0
        for row in self.weights:
            for w in row:
                d = max(d, max(w.num.degree, 0), w.den.degree)
        return d

    def subgraph(self, vertices: Sequence[int]) -> "WeightedDigraph":
        vs = list(vertices)
        return WeightedDigraph([[self.weights[i][j] for j in vs] for i in vs])

    def relabel(self, perm: Sequence[int]) -> "WeightedDigraph":
        """Graph whose vertex ``k`` is this graph's vertex ``perm[k]``."""
        return self.subgraph(perm)

    def close(self, other: "WeightedDigraph", tol: float = 1e-9) -> bool:
        if self.n != other.n:
            return False
        return all(a.close(b, tol) for ra, rb in zip(self.weights, other.weights)
                   for a, b in zip(ra, rb))

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, edges={self.edge_count})"

    def pretty(self) -> str:
        lines = []
        for i, row in enumerate(self.weights):
            lines.append("  ".join(str(w) for w in row))
        return "\n".join(lines)


def from_matrix(entries) -> WeightedDigraph:
    """Build a graph from a square matrix of numbers, polynomials or rational functions.

    A ``(num, den)`` pair of coefficient lists is also accepted as an entry.
    """
    if isinstance(entries, np.ndarray):
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("adjacency matrix must be square")
        entries = entries.tolist()
    return WeightedDigraph(entries)


def normalize_input(g, n: int | None = None, *, symmetrize: bool = False,
                    unit_weights: bool = False, merge_parallel: bool = True) -> WeightedDigraph:
    """Turn undirected, unweighted or multi-edge input into a weighted digraph.

    ``g`` is either a matrix/graph or an iterable of ``(i, j)`` or
    ``(i, j, weight)`` edges on ``n`` vertices.  Missing weights are 1.
    With ``symmetrize`` each listed edge also produces its reverse.  Parallel
    edges have their weights summed; with ``merge_parallel=False`` they
    raise instead.
    """
    if isinstance(g, WeightedDigraph) or isinstance(g, np.ndarray) or (
            isinstance(g, (list, tuple)) and g and isinstance(g[0], (list, tuple, np.ndarray))
            and n is None):
        base = g if isinstance(g, WeightedDigraph) else from_matrix(g)
        w = [list(row) for row in base.weights]
        if unit_weights:
            w = [[RationalFn() if x.is_zero else RationalFn(1) for x in row] for row in w]
        if symmetrize:
            for i in range(base.n):
                for j in range(base.n):
                    if i != j and w[j][i].is_zero and not w[i][j].is_zero:
                        w[j][i] = w[i][j]
        return WeightedDigraph(w)

    if n is None:
        raise ValueError("edge-list input needs the vertex count n")
    w = [[RationalFn() for _ in range(n)] for _ in range(n)]
    seen = set()

    def put(i, j, x):
        if (i, j) in seen and not merge_parallel:
            raise ValueError(f"parallel edge ({i}, {j})")
        seen.add((i, j))
        w[i][j] = w[i][j] + x

    for e in g:
        i, j = int(e[0]), int(e[1])
        x = RationalFn(1) if unit_weights or len(e) < 3 else _entry(e[2])
        put(i, j, x)
        if symmetrize and i != j:
            put(j, i, x)
    return WeightedDigraph(w)


# ---------------------------------------------------------------------------
# strongly connected components


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components.

    ``components`` are listed sinks first, so ordering vertices component by
    component makes the adjacency matrix block lower triangular.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    scc_edges: frozenset

    def same(self, i: int, j: int) -> bool:
        return self.component_of[i] == self.component_of[j]


def scc(g: WeightedDigraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative, visiting vertices and successors by index."""
    n = g.n
    succ = [g.successors(i) for i in range(n)]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            nbrs = succ[v]
            while k < len(nbrs):
                w = nbrs[k]
                k += 1
                if index[w] < 0:
                    work.append((v, k))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    comp_of = [0] * n
    for c, members in enumerate(comps):
        for v in members:
            comp_of[v] = c
    edges = frozenset((i, j) for i, j in g.edges() if comp_of[i] == comp_of[j])
    return SccDecomposition(tuple(comp_of), tuple(comps), edges)


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True, order=True)
class Cycle:
    """Strong cycle (>= 2 vertices, listed along its edges) or weak placeholder."""

    vertices: tuple[int, ...]
    kind: str = "strong"

    def __post_init__(self):
        if self.kind not in ("strong", "weak"):
            raise ValueError(f"unknown cycle kind {self.kind!r}")
        if self.kind == "weak" and len(self.vertices) != 1:
            raise ValueError("weak cycles have exactly one vertex")
        if self.kind == "strong" and len(self.vertices) < 2:
            raise ValueError("strong cycles have at least two vertices")

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        if len(vs) == 1:
            return []
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def rotated_to(self, v: int) -> tuple[int, ...]:
        k = self.vertices.index(v)
        return self.vertices[k:] + self.vertices[:k]

    def label(self) -> str:
        return "{" + ",".join(f"v{v + 1}" for v in self.vertices) + "}"


def canonical_rotation(vertices: Sequence[int]) -> tuple[int, ...]:
    vs = tuple(vertices)
    k = vs.index(min(vs))
    return vs[k:] + vs[:k]


def _johnson(adj: dict[int, list[int]], cap: int, found: list[tuple[int, ...]]):
    """Johnson's elementary-circuit algorithm on one vertex set; loops ignored."""
    nodes = sorted(adj)
    for s in nodes:
        allowed = {v for v in nodes if v >= s}
        sub = {v: [w for w in adj[v] if w in allowed and w != v] for v in allowed}
        # only the component of s in the restricted subgraph can hold circuits through s
        blocked = {v: False for v in allowed}
        bmap: dict[int, set[int]] = {v: set() for v in allowed}
        path = [s]
        blocked[s] = True
        stack = [(s, iter(sub[s]))]
        closed = {s: False}

        def unblock(u):
            todo = [u]
            while todo:
                x = todo.pop()
                if blocked[x]:
                    blocked[x] = False
                    todo.extend(bmap[x])
                    bmap[x].clear()

        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == s:
                    found.append(tuple(path))
                    if len(found) > cap:
                        raise CycleOverflowError(f"more than {cap} cycles")
                    closed[v] = True
                elif not blocked[w]:
                    path.append(w)
                    blocked[w] = True
                    closed[w] = False
                    stack.append((w, iter(sub[w])))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            path.pop()
            if closed[v]:
                unblock(v)
            else:
                for w in sub[v]:
                    bmap[w].add(v)
            if stack:
                u = stack[-1][0]
                closed[u] = closed[u] or closed[v]


def cycles(g: WeightedDigraph, cap: int = DEFAULT_CYCLE_CAP,
           decomposition: SccDecomposition | None = None) -> list[Cycle]:
    """All strong cycles followed by one weak cycle per vertex on no strong cycle.

    Strong cycles start at their smallest vertex and are sorted by length
    then vertex tuple; weak cycles follow in vertex order.
    """
    dec = decomposition or scc(g)
    found: list[tuple[int, ...]] = []
    for comp in dec.components:
        if len(comp) < 2:
            continue
        members = set(comp)
        adj = {v: [w for w in g.successors(v) if w in members] for v in comp}
        _johnson(adj, cap, found)
    strong = sorted({canonical_rotation(c) for c in found}, key=lambda c: (len(c), c))
    on_strong = {v for c in strong for v in c}
    out = [Cycle(c, "strong") for c in strong]
    out += [Cycle((v,), "weak") for v in range(g.n) if v not in on_strong]
    return out


def is_pi_class(g: WeightedDigraph) -> bool:
    """True when no weight has numerator degree above its denominator degree."""
    return all(w.pi() <= 0 for row in g.weights for w in row)


@dataclass(frozen=True)
class CycleAdjacency:
    adjacent: tuple[Cycle, ...]
    admissible: tuple[Cycle, ...]
    through: tuple[Cycle, ...]

    @property
    def removal_improves_brualdi(self) -> bool:
        """Hypotheses under which removing the vertex cannot enlarge the Brualdi-type region."""
        return not self.adjacent and set(self.admissible) == set(self.through)


def cycle_adjacency(g: WeightedDigraph, v: int,
                    all_cycles: list[Cycle] | None = None) -> CycleAdjacency:
    """Adjacent cycles, admissible cycles through ``v`` and all cycles through ``v``.

    A cycle not containing ``v`` is adjacent to ``v`` when one of its vertices
    has an edge into ``v`` inside a strongly connected component.  A cycle
    ``v -> a2 -> ... -> am -> v`` through ``v`` is admissible when none of
    ``a2 .. a(m-1)`` has an edge back to ``v`` and ``am`` has no
    within-component edge to a vertex off the cycle.  Weak cycles are
    admissible.
    """
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    dec = scc(g)
    cyc = all_cycles if all_cycles is not None else cycles(g, decomposition=dec)
    sedges = dec.scc_edges
    adjacent, admissible, through = [], [], []
    for c in cyc:
        if v not in c:
            if any(u != v and (u, v) in sedges for u in c.vertices):
                adjacent.append(c)
            continue
        through.append(c)
        if c.kind == "weak":
            admissible.append(c)
            continue
        path = c.rotated_to(v)
        m = len(path)
        if any(g.has_edge(path[j], v) for j in range(1, m - 1)):
            continue
        last = path[-1]
        on_cycle = set(path)
        if any((last, k) in sedges for k in range(g.n) if k not in on_cycle):
            continue
        admissible.append(c)
    return CycleAdjacency(tuple(adjacent), tuple(admissible), tuple(through))
