import numpy as np
import pytest
from hypothesis import given, strategies as st

from loopmoment import realization as rz
from loopmoment.affine import enumerate_reduced_words
from loopmoment.alg_loops import (LaurentLoop, cell_check_sweep, cell_point,
                                  conjugation_cell_check, coordinate_tuples, homomorphism_loop,
                                  identity_loop, multiply, root_subgroup_element, tau_alg)
from loopmoment.involution import LieInvolution, table_involution

SU2, SU3 = rz.SpecialUnitary(2), rz.SpecialUnitary(3)
gaussians = st.builds(rz.gauss, st.fractions(-5, 5, max_denominator=7),
                      st.fractions(-5, 5, max_denominator=7))
CIRCLE = np.exp(2j * np.pi * (np.arange(16) + 0.3) / 16)


def test_su2_generators():
    x = rz.gauss(2, -1)
    u1 = root_subgroup_element(SU2, 1, x)
    assert u1.degree == 0
    assert u1.coeffs == {0: rz.eye(2) + rz.unit(2, 0, 1, x)}
    u0 = root_subgroup_element(SU2, 0, x)
    assert u0.degree == 1
    assert u0.coeffs == {0: rz.eye(2), -1: rz.unit(2, 1, 0, x)}
    assert root_subgroup_element(SU2, 1, 0) == identity_loop(2)
    with pytest.raises(ValueError):
        root_subgroup_element(SU2, 2, x)
    with pytest.raises(ValueError):
        root_subgroup_element(object(), 1, x)


@given(gaussians, gaussians)
def test_one_parameter_subgroups(x, y):
    for real in (SU2, SU3):
        for j in range(real.rank + 1):
            prod = multiply(root_subgroup_element(real, j, x), root_subgroup_element(real, j, y))
            assert prod == root_subgroup_element(real, j, x + y)
    g = root_subgroup_element(SU2, 0, x)
    assert multiply(g, identity_loop(2)) == g
    assert multiply(g, root_subgroup_element(SU2, 0, y)).degree <= 2


def test_multiply_errors():
    with pytest.raises(ValueError):
        multiply(identity_loop(2), identity_loop(3))


def random_word_loop(data, real):
    word = data.draw(st.lists(st.integers(0, real.rank), max_size=4))
    xs = [data.draw(gaussians) for _ in word]
    return cell_point(real, word, xs, (0,) * real.rank)


@given(data=st.data())
def test_tau_is_involutive_homomorphism(data):
    sigma = table_involution("su", 3)
    a, b = random_word_loop(data, SU3), random_word_loop(data, SU3)
    assert tau_alg(sigma, tau_alg(sigma, a)) == a
    assert tau_alg(sigma, multiply(a, b)) == multiply(tau_alg(sigma, a), tau_alg(sigma, b))


@given(data=st.data())
def test_tau_matches_pointwise_evaluation(data):
    sigma = table_involution("su", 3)
    g = random_word_loop(data, SU3)
    t = tau_alg(sigma, g)
    for z in CIRCLE:
        assert np.abs(t.evaluate(z) - np.conj(g.evaluate(np.conj(z)))).max() < 1e-12
        assert abs(np.linalg.det(g.evaluate(z)) - 1) < 1e-9


def test_tau_on_real_loops_and_conjugation_form():
    sigma = table_involution("su", 2)
    g = multiply(root_subgroup_element(SU2, 0, 3), root_subgroup_element(SU2, 1, -2))
    assert tau_alg(sigma, g) == g
    x = rz.gauss(1, 1)
    g = root_subgroup_element(SU2, 0, x)
    assert tau_alg(sigma, g).coeffs[-1] == rz.unit(2, 1, 0, rz.gconj(x))
    with pytest.raises(ValueError):
        tau_alg(LieInvolution("su", 2, False, rz.diag([-1, 1]), (), ""), g)


def test_tau_so_recipe():
    # holomorphic I_{p,q} conjugation is rewritten as M conj(.) M^-1
    sigma = table_involution("so", 3)
    m = rz.matrix([[1, rz.gauss(0, 2), 0], [0, 1, 0], [0, 0, 1]])
    g = LaurentLoop(3, {0: rz.eye(3), -1: m}, "SO(3)")
    t = tau_alg(sigma, g)
    assert tau_alg(sigma, t) == g
    mm = rz.to_numpy(sigma.matrix)
    for z in CIRCLE[:4]:
        want = mm @ np.conj(g.evaluate(np.conj(z))) @ np.linalg.inv(mm)
        assert np.abs(t.evaluate(z) - want).max() < 1e-12


@pytest.mark.parametrize("real", [SU2, SU3], ids=["SU2", "SU3"])
def test_homomorphism_loops_are_tau_fixed(real):
    sigma = table_involution("su", real.n)
    rs = real.root_system()
    from loopmoment.moment import lattice_ball
    for xi in lattice_ball(rs, 6):
        g = homomorphism_loop(real, xi)
        assert tau_alg(sigma, g) == g
        z = CIRCLE[3]
        assert np.allclose(np.diag(g.evaluate(z)), z ** np.array(real.diagonal_exponents(xi)))


def test_cell_check_examples():
    rs2 = SU2.root_system()
    assert conjugation_cell_check(rs2, SU2, (), [], (3,)).holds
    assert conjugation_cell_check(rs2, SU2, (0, 1), [rz.gauss(1, 2), rz.gauss(-3, 1)], (1,)).holds
    assert conjugation_cell_check(rs2, SU2, (0, 1), [2, -5], (-2,)).holds
    with pytest.raises(ValueError):
        conjugation_cell_check(rs2, SU2, (0, 1), [1], (1,))
    with pytest.raises(ValueError):
        conjugation_cell_check(rs2, SU2, (0,), [1], (0.5,))
    with pytest.raises(ValueError):
        conjugation_cell_check(rs2, SU2, (2,), [1], (0,))


def test_cell_check_detects_wrong_coordinates():
    # sanity: without conjugating x the identity fails for non-real x
    sigma = table_involution("su", 2)
    x = rz.gauss(1, 1)
    lhs = tau_alg(sigma, cell_point(SU2, (0,), [x], (1,)))
    assert lhs != cell_point(SU2, (0,), [x], (1,))


def test_coordinate_tuples_are_seeded():
    a = coordinate_tuples(3, seed=4, n_random=5)
    assert a == coordinate_tuples(3, seed=4, n_random=5)
    assert len(a) == 11
    assert coordinate_tuples(0) == [()]


def test_small_sweep():
    rs = SU2.root_system()
    words = enumerate_reduced_words(rs, 3)
    checks = cell_check_sweep(rs, SU2, words, [(0,), (2,)], n_random=3)
    assert checks and all(c.holds for c in checks)


def test_json_round_trip():
    g = cell_point(SU3, (0, 2, 1), [rz.gauss(1, -2), 3, rz.gauss(0, 1)], (1, 1))
    d = g.to_json()
    assert d["degree"] == g.degree
    assert set(d["coeffs"]) == {str(p) for p in g.coeffs}
    assert LaurentLoop.from_json(d) == g
