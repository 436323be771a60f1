from fractions import Fraction

import pytest

from injring.jring import (
    TruncationError,
    additive_order,
    alpha,
    alpha_index,
    annihilation_exceptions,
    eta,
    is_unit,
    j_degree_group,
    j_mul,
    j_zero,
    pontrjagin_check,
    vp,
    zeta_inv,
)


def test_vp():
    assert vp(18, 3) == 2 and vp(-5, 5) == 1 and vp(7, 3) == 0
    with pytest.raises(ValueError):
        vp(0, 3)


def test_groups():
    assert str(j_degree_group(0, 3, 4)) == "ZpTrunc(4)"
    assert str(j_degree_group(-2, 3, 4)) == "QpModZpTrunc(4)"
    assert alpha_index(3, 3) == 1
    assert str(j_degree_group(4 * 3 - 1, 3, 4)) == "Cyclic(9)"
    assert str(j_degree_group(1, 3, 4)) == "Zero"
    with pytest.raises(ValueError):
        j_degree_group(0, 2, 4)
    with pytest.raises(ValueError):
        j_degree_group(0, 9, 4)


def test_alpha_products():
    for p in (3, 5):
        for j in range(1, 12):
            v = vp(j, p)
            prod = j_mul(alpha(j, p, 6), alpha(-j, p, 6))
            assert prod.degree == -2
            assert prod.value == Fraction(1, p ** (v + 1))
            back = j_mul(alpha(-j, p, 6), alpha(j, p, 6))
            assert back.value == Fraction(-1, p ** (v + 1)) % 1


def test_unrelated_alphas_multiply_to_zero():
    assert j_mul(alpha(1, 3, 4), alpha(2, 3, 4)).is_zero()
    assert j_mul(zeta_inv(Fraction(1, 3), 3, 4), alpha(1, 3, 4)).is_zero()


def test_truncation():
    with pytest.raises(TruncationError):
        zeta_inv(Fraction(1, 27), 3, 2)
    with pytest.raises(TruncationError):
        j_mul(alpha(9, 3, 2), alpha(-9, 3, 2))


def test_degree_zero_acts():
    x = j_mul(eta(2, 3, 4), alpha(1, 3, 4))
    assert x.value == 2
    y = j_mul(zeta_inv(Fraction(1, 9), 3, 4), eta(3, 3, 4))
    assert y.value == Fraction(1, 3)


def test_addition_and_orders():
    a = alpha(3, 3, 4)
    assert additive_order(a) == 9
    assert (a + a).value == 2
    assert additive_order(zeta_inv(Fraction(2, 9), 3, 4)) == 9
    with pytest.raises(ValueError):
        a + alpha(1, 3, 4)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_duality(p):
    M = 4
    for k in range(-40, 41):
        rep = pontrjagin_check(k, p, M)
        assert rep.passed, rep.as_record()


def test_units_and_local_ring():
    assert is_unit(eta(1, 3, 4)) and not is_unit(eta(3, 3, 4))
    assert not is_unit(alpha(1, 3, 4))


def test_annihilation_exceptions_are_finite():
    # each alpha_j is only killed-off by alpha_k for k != -j
    for j in (1, 2, -4):
        x = alpha(j, 3, 4)
        assert annihilation_exceptions(x, 30) == [-j]
    assert annihilation_exceptions(j_zero(5, 3, 4), 30) == []
