import numpy as np
import pytest

from graphgen import random_pi_graph
from isospectral import Poly, RationalFn
from isospectral.apps import (estimate_rho, exposed_boundary_scores, laplacian,
                              loopless_removal_set, suggest_structural_sets)
from isospectral.charpoly import spectrum
from isospectral.gallery import (five_vertex_unweighted, hub_and_ring, laplacian_demo, looped_six,
                                 path_three, three_vertex_rational)
from isospectral.graph import from_matrix
from isospectral.reduce import NotPiClassError, validate_structural


def test_combinatorial_laplacian():
    lap = laplacian(laplacian_demo()).constant_matrix().real
    assert np.allclose(lap, lap.T)
    assert np.allclose(lap.sum(axis=1), 0)
    eig = np.linalg.eigvalsh(lap)
    assert np.allclose(eig, [0, 1, 2, 4, 5])


def test_normalized_laplacian_range():
    lap = laplacian(hub_and_ring(), "normalized").constant_matrix().real
    eig = np.linalg.eigvalsh(lap)
    assert eig.min() > -1e-12 and eig.max() < 2 + 1e-12


def test_generalized_laplacian_rows():
    g = from_matrix([[0, 2, 0], [1, 0, 3], [0, 0, 0]])
    lap = laplacian(g, "generalized").constant_matrix().real
    assert np.allclose(lap, [[2, -2, 0], [-1, 4, -3], [0, 0, 0]])


def test_laplacian_input_checks():
    with pytest.raises(ValueError):
        laplacian(five_vertex_unweighted())  # directed
    with pytest.raises(ValueError):
        laplacian(looped_six(), "generalized")
    with pytest.raises(ValueError):
        laplacian(path_three(), "signless")


def test_loopless_removal_set():
    assert loopless_removal_set(looped_six()) == [1, 3, 5]
    g = path_three()
    rem = loopless_removal_set(g)
    validate_structural(g, [v for v in range(3) if v not in rem])


def test_rho_levels_for_looped_graph():
    est = estimate_rho(looped_six(), levels=2)
    assert est.levels[0].bound == pytest.approx(3, abs=1e-3)
    assert est.levels[1].bound == pytest.approx(2, abs=1e-3)
    assert est.levels[1].exceptional == (0j,)
    assert est.bound == min(lv.bound for lv in est.levels)
    assert est.bound >= spectrum(looped_six()).max_modulus() - 1e-9


def test_rho_bounds_random_graphs():
    rng = np.random.default_rng(17)
    for _ in range(8):
        g = random_pi_graph(rng)
        try:
            rho = spectrum(g).max_modulus()
        except ValueError:
            continue
        assert estimate_rho(g, levels=2).bound >= rho - 1e-6


def test_rho_needs_degree_class():
    with pytest.raises(NotPiClassError):
        estimate_rho(from_matrix([[RationalFn(Poly([0, 0, 1]))]]))


def test_loopless_first_suggestion():
    top = suggest_structural_sets(looped_six(), "loopless_first")[0]
    assert top.keep == (0, 2, 4)
    assert top.removed_from(6) == (1, 3, 5)


def test_exposed_boundary_prefers_hub():
    g = hub_and_ring()
    scores = exposed_boundary_scores(g)
    assert int(np.argmax(scores)) == 0
    top = suggest_structural_sets(g, "exposed_boundary")[0]
    assert top.keep == (1, 2, 3, 4, 5, 6)


def test_exhaustive_small_sorted_and_structural():
    g = three_vertex_rational()
    sugg = suggest_structural_sets(g, "exhaustive_small")
    sizes = [len(s.keep) for s in sugg]
    assert sizes == sorted(sizes)
    for s in sugg:
        validate_structural(g, s.keep)
    with pytest.raises(ValueError):
        suggest_structural_sets(from_matrix(np.zeros((13, 13))), "exhaustive_small")


def test_unknown_strategy():
    with pytest.raises(ValueError):
        suggest_structural_sets(path_three(), "random")
