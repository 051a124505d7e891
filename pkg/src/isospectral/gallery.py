"""Small reference graphs used by the tests, fixtures and documentation."""
from __future__ import annotations

import numpy as np

from .graph import WeightedDigraph, from_matrix, normalize_input
from .wfield import Poly, RationalFn

__all__ = [
    "rat", "three_vertex_rational", "five_vertex_unweighted", "five_vertex_reduced_3",
    "five_vertex_reduced_2", "path_three", "brualdi_adjacent", "brualdi_rotation",
    "two_triangles", "two_triangles_reduced", "laplacian_demo", "looped_six",
    "looped_six_reduced", "hub_and_ring", "catalog", "write_fixtures",
]


def rat(num, den=(1,)) -> RationalFn:
    """Rational function from ascending coefficient lists."""
    return RationalFn(Poly(num), Poly(den))


def three_vertex_rational() -> WeightedDigraph:
    """Three vertices with rational weights; spectrum {-1, -1, i, -i, 2}."""
    return from_matrix([
        [rat([1, 1], [0, 0, 1]), rat([1], [0, 1]), rat([1, 1], [0, 1])],
        [rat([1, 2], [0, 0, 1]), rat([1], [0, 1]), rat([1], [0, 1])],
        [0, 1, 0],
    ])


def five_vertex_unweighted() -> WeightedDigraph:
    """Unweighted digraph on five vertices with ten edges and the same spectrum."""
    return from_matrix(np.array([
        [0, 0, 1, 0, 1],
        [0, 0, 0, 1, 1],
        [0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [1, 1, 1, 1, 0],
    ]))


def five_vertex_reduced_3() -> WeightedDigraph:
    """Reduction of :func:`five_vertex_unweighted` onto its first three vertices."""
    return three_vertex_rational()


def five_vertex_reduced_2() -> WeightedDigraph:
    """Further reduction onto the first two vertices."""
    d = rat([1, 1], [0, 0, 1])
    o = rat([1, 2], [0, 0, 1])
    return from_matrix([[d, o], [o, d]])


def path_three() -> WeightedDigraph:
    """Undirected path v1 - v2 - v3 with unit weights."""
    return normalize_input([(0, 1), (1, 2)], 3, symmetrize=True)


def brualdi_adjacent() -> WeightedDigraph:
    """Four-vertex graph where removing v1 enlarges the Brualdi-type region but removing v4 shrinks it."""
    return normalize_input([
        (0, 3, 10), (3, 0, 0.1), (3, 1, 0.1), (1, 0, 1), (1, 2, 1), (2, 1, 1),
    ], 4)


def brualdi_rotation() -> WeightedDigraph:
    """Four-vertex graph where v1 has no adjacent cycle yet removing it still enlarges the Brualdi-type region."""
    return from_matrix(np.array([
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [1, 0, 0, 1],
        [1, 0, 0, 0],
    ]))


def two_triangles() -> WeightedDigraph:
    """Two directed triangles sharing v5; two cycles."""
    return from_matrix(np.array([
        [0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [1, 0, 1, 0, 0],
    ]))


def two_triangles_reduced() -> WeightedDigraph:
    """Reduction of :func:`two_triangles` removing v5; three cycles."""
    il = rat([1], [0, 1])
    return from_matrix([
        [0, 1, 0, 0],
        [il, 0, il, 0],
        [0, 0, 0, 1],
        [il, 0, il, 0],
    ])


def laplacian_demo() -> WeightedDigraph:
    """Simple graph on five vertices whose combinatorial Laplacian has spectrum {0, 1, 2, 4, 5}."""
    return from_matrix(np.array([
        [0, 0, 0, 0, 1],
        [0, 0, 0, 1, 1],
        [0, 0, 0, 1, 1],
        [0, 1, 1, 0, 1],
        [1, 1, 1, 1, 0],
    ]))


def looped_six() -> WeightedDigraph:
    """Six vertices, loops on v1, v3, v5; spectral radius example."""
    edges = [(0, 0), (2, 2), (4, 4), (0, 1), (1, 0), (1, 2), (2, 4),
             (4, 3), (3, 0), (4, 5), (5, 4)]
    return normalize_input(edges, 6)


def looped_six_reduced() -> WeightedDigraph:
    """Reduction of :func:`looped_six` onto its looped vertices v1, v3, v5."""
    return from_matrix([
        [rat([1, 1], [0, 1]), rat([1], [0, 1]), 0],
        [0, 1, 1],
        [rat([1], [0, 1]), 0, rat([1, 1], [0, 1])],
    ])


def hub_and_ring(tail: int = 2) -> WeightedDigraph:
    """Hub v1 joined to a 4-cycle v2..v5 plus a disjoint path of ``tail`` vertices."""
    n = 5 + tail
    edges = [(0, k) for k in range(1, 5)] + [(1, 2), (2, 3), (3, 4), (4, 1)]
    edges += [(5 + k, 6 + k) for k in range(tail - 1)]
    return normalize_input(edges, n, symmetrize=True)


def catalog() -> dict[str, WeightedDigraph]:
    """Every reference graph keyed by a file-friendly name."""
    return {
        "three_vertex_rational": three_vertex_rational(),
        "five_vertex_unweighted": five_vertex_unweighted(),
        "five_vertex_reduced_2": five_vertex_reduced_2(),
        "path_three": path_three(),
        "brualdi_adjacent": brualdi_adjacent(),
        "brualdi_rotation": brualdi_rotation(),
        "two_triangles": two_triangles(),
        "two_triangles_reduced": two_triangles_reduced(),
        "laplacian_demo": laplacian_demo(),
        "looped_six": looped_six(),
        "looped_six_reduced": looped_six_reduced(),
        "hub_and_ring": hub_and_ring(),
    }


def write_fixtures(directory) -> list[str]:
    """Write every catalog graph as ``<name>.json`` (1-based) into ``directory``."""
    from pathlib import Path

    from .io import dump_graph

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, g in catalog().items():
        p = d / f"{name}.json"
        p.write_text(dump_graph(g, 1), encoding="utf-8")
        out.append(str(p))
    return out
