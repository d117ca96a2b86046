from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from loopmoment import realization as rz

fractions = st.fractions(-20, 20, max_denominator=12)


@given(fractions, fractions)
def test_gauss_string_round_trip(a, b):
    x = rz.gauss(a, b)
    assert rz.parse_gauss(rz.gauss_str(x)) == x
    assert rz.re_im(rz.gconj(x)) == (a, -b)


def test_gauss_str_format():
    assert rz.gauss_str(rz.gauss(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4 i"
    assert rz.parse_gauss("2") == rz.gauss(2)
    with pytest.raises(TypeError):
        rz.as_gauss(1j)


def test_matrix_json_round_trip():
    m = rz.matrix([[rz.gauss(1, 2), 0], [Fraction(1, 3), rz.gauss(0, -1)]])
    assert rz.matrix_from_json(rz.matrix_to_json(m)) == m


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_su_coroots_realize_cartan_gram(n):
    real = rz.SpecialUnitary(n)
    rs = real.root_system()
    h = real.coroot_matrices()
    gram = tuple(tuple(rz.trace_form("su", a, b) for b in h) for a in h)
    assert gram == rs.gram


def test_su_realization():
    real = rz.SpecialUnitary(3)
    assert real.diagonal_exponents((1, -2)) == (1, -3, 2)
    assert real.root_vector(0) == rz.unit(3, 2, 0)
    assert real.root_vector(2) == rz.unit(3, 1, 2)
    with pytest.raises(ValueError):
        real.root_vector(3)
    with pytest.raises(ValueError):
        rz.SpecialUnitary(1)
    with pytest.raises(ValueError):
        rz.algebra_basis("sl", 2)


def test_root_vectors_are_weight_vectors():
    # [H, E_alpha] = alpha(H) E_alpha with alpha(H_j) the Cartan entry, times i
    real = rz.SpecialUnitary(3)
    rs = real.root_system()
    h = real.coroot_matrices()
    i_ = rz.gauss(0, 1)
    for j in (1, 2):
        e = real.root_vector(j)
        for k, hk in enumerate(h):
            c = rs.cartan_matrix[j - 1][k]
            assert rz.bracket(hk, e) == e.applyfunc(lambda v: v * i_ * rz.gauss(c), rz.QQ_I)
