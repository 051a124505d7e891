import numpy as np
import pytest
import sympy

from graphgen import random_constant_matrix, random_pi_graph, random_structural_keep
from isospectral import Poly, RationalFn
from isospectral.charpoly import _det_bareiss, _det_laplace, char_poly, spectrum, verify_prop1
from isospectral.gallery import (brualdi_adjacent, five_vertex_unweighted, path_three,
                                 three_vertex_rational)
from isospectral.graph import from_matrix

X = sympy.Symbol("x")


def to_sympy(w: RationalFn):
    num = sum(sympy.nsimplify(c.real) * X ** k for k, c in enumerate(w.num.c))
    den = sum(sympy.nsimplify(c.real) * X ** k for k, c in enumerate(w.den.c))
    return num / den


def test_reference_charpoly():
    cp = char_poly(three_vertex_rational())
    assert cp.num.close(Poly([2, 3, 2, 2, 0, -1]), 1e-9)
    assert cp.den.close(Poly([0, 0, 1]), 1e-9)


def test_reference_spectra():
    vals = spectrum(five_vertex_unweighted())
    assert sorted(m for _, m in vals) == [1, 1, 1, 2]
    h = sorted(spectrum(brualdi_adjacent()).values, key=lambda z: (z.real, z.imag))
    want = [-1.007 - 0.513j, -1.007 + 0.513j, 0.524, 1.490]
    assert np.allclose(h, want, atol=2e-3)
    assert np.allclose(sorted(spectrum(path_three()).values, key=lambda z: z.real),
                       [-np.sqrt(2), 0, np.sqrt(2)])


def test_constant_matrix_charpoly_matches_numpy():
    rng = np.random.default_rng(3)
    for n in range(1, 10):
        a = random_constant_matrix(rng, n)
        cp = char_poly(from_matrix(a))
        want = (-1) ** n * np.poly(a)[::-1]
        assert cp.den.degree == 0
        assert np.allclose(cp.num.c, want, atol=1e-8 * (1 + np.abs(want).max()))


def test_rational_charpoly_matches_sympy():
    rng = np.random.default_rng(8)
    for _ in range(8):
        g = random_pi_graph(rng, n=int(rng.integers(2, 5)))
        m = sympy.Matrix(g.n, g.n, lambda i, j: to_sympy(g[i, j]) - (X if i == j else 0))
        want = sympy.cancel(m.det(method="berkowitz"))
        got = sympy.cancel(to_sympy(char_poly(g).value))
        assert sympy.simplify(got - want) == 0


def test_laplace_and_bareiss_agree():
    rng = np.random.default_rng(4)
    for _ in range(10):
        g = random_pi_graph(rng)
        m = [[g[i, j] - (RationalFn(Poly([0, 1])) if i == j else 0) for j in range(g.n)]
             for i in range(g.n)]
        assert _det_laplace(m).close(_det_bareiss(m), 1e-7)


def test_invariant_under_relabeling():
    rng = np.random.default_rng(9)
    for _ in range(10):
        g = random_pi_graph(rng)
        perm = rng.permutation(g.n).tolist()
        assert char_poly(g).value.close(char_poly(g.relabel(perm)).value, 1e-8)


def test_prop1_on_path():
    rep = verify_prop1(path_three(), [0, 1])
    assert rep.ok and rep.residual < 1e-12
    # dividing by 0 - λ flips the sign of the displayed (2λ - λ³)/λ
    assert rep.rhs.close(RationalFn(Poly([-2, 0, 1])))


def test_prop1_random():
    rng = np.random.default_rng(31)
    for _ in range(30):
        g = random_pi_graph(rng)
        keep = random_structural_keep(rng, g)
        if keep is not None:
            assert verify_prop1(g, keep).ok


def test_spectrum_of_vanishing_charpoly():
    # λ on the diagonal makes det(M - λI) identically zero
    g = from_matrix([[RationalFn(Poly([0, 1]))]])
    with pytest.raises(ValueError):
        spectrum(g)


def test_reciprocal_loop_spectrum():
    g = from_matrix([[RationalFn(1, Poly([0, 1]))]])
    # 1/λ - λ has two roots, neither cancelled
    assert len(spectrum(g)) == 2


def test_empty_spectrum():
    # (λ² + 1)/λ - λ = 1/λ has no roots
    g = from_matrix([[RationalFn(Poly([1, 0, 1]), Poly([0, 1]))]])
    assert len(spectrum(g)) == 0
