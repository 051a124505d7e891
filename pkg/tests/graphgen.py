"""Random graphs whose weights have numerator degree <= denominator degree."""
from __future__ import annotations

import numpy as np

from isospectral.graph import WeightedDigraph
from isospectral.reduce import NotStructuralError, validate_structural
from isospectral.wfield import Poly, RationalFn


def random_weight(rng: np.random.Generator, rational_prob: float = 0.4) -> RationalFn:
    c = float(rng.integers(-3, 4)) or 1.0
    if rng.random() >= rational_prob:
        return RationalFn(c)
    pole = float(rng.integers(-2, 3))
    den = Poly([-pole, 1])
    if rng.random() < 0.5:
        num = Poly([c])
    else:
        num = Poly([float(rng.integers(-2, 3)), c])
    return RationalFn(num, den)


def random_pi_graph(rng: np.random.Generator, n: int | None = None, density: float = 0.45,
                    rational_prob: float = 0.4) -> WeightedDigraph:
    n = int(rng.integers(2, 7)) if n is None else n
    w = [[RationalFn() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                w[i][j] = random_weight(rng, rational_prob)
    return WeightedDigraph(w)


def random_structural_keep(rng: np.random.Generator, g: WeightedDigraph, tries: int = 50):
    """Random proper structural kept set, or None."""
    for _ in range(tries):
        k = int(rng.integers(1, g.n))
        keep = sorted(rng.choice(g.n, size=k, replace=False).tolist())
        try:
            validate_structural(g, keep)
        except NotStructuralError:
            continue
        return keep
    return None


def random_constant_matrix(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    n = int(rng.integers(1, 7)) if n is None else n
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a[rng.random((n, n)) < 0.3] = 0
    return a
