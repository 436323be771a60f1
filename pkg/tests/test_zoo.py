import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from injring.engine import elements_of_degree, hilbert
from injring.ordinals import delta, enumerate_delta_le, mu
from injring.zoo import Cube, Epsilon, Exterior, Rado, edge, extend_embedding, flatten, tau_retraction, theta
from injring.zoo.cube import flat_count, flatten_step, multi_degree, y_from_x
from injring.zoo.epsilon import check_epsilon_witness, epsilon_witness, in_MA
from injring.zoo.rado import Graph, check_rado_witness, is_full_embedding, rado_witness


# -- exterior -------------------------------------------------------------


def test_exterior_one_dimensional_everywhere():
    assert hilbert(Exterior(10)) == [1] * 11


def test_exterior_products():
    E = Exterior(8)
    assert E.x(0) * E.x(1) == E.x(0, 1)
    assert (E.x(0) * E.x(0, 2)).is_zero()


def test_truncated_exterior_vanishes_above_top():
    E = Exterior(0, 3)
    assert E.top_degree() == 7
    assert E.dim(7) == 1 and E.dim(8) == 0 and E.dim(100) == 0


# -- cube -------------------------------------------------------------------


def test_cube_dimensions_count_flat_multiindices():
    C = Cube(40)
    for d in range(41):
        assert C.dim(d) == flat_count(d)


def test_cube_relation():
    C = Cube(16)
    assert C.y(0) ** 3 == C.y(0) * C.y(1)
    assert C.y(2) ** 3 == C.y(2) * C.y(3)


@given(st.lists(st.integers(0, 7), max_size=4))
def test_flatten_agrees_with_single_steps(alpha):
    a = tuple(alpha)
    while (nxt := flatten_step(a)) is not None:
        a = nxt
    assert flatten(alpha) == flatten(a)
    assert multi_degree(flatten(alpha)) == multi_degree(alpha)


def test_theta_is_solid_power():
    C = Cube(64)
    for k in range(8):
        assert C.y_alpha(theta(3, k)) == C.y(3) ** k


def test_y_from_x():
    C = Cube(32)
    for n in range(5):
        assert y_from_x(C, n) == C.y(n)


def test_cube_bar_is_poincare_shaped():
    B = Cube(0, 0, 3, bar=True)
    top = B.top_degree()
    dims = [B.dim(d) for d in range(top + 1)]
    assert dims == dims[::-1] and dims[top] == 1


def test_bar_product_wraps_through_the_relation():
    B = Cube(0, 0, 2, bar=True)
    assert B.y(0) * B.y(0, 2) == B.y(0) * B.y(1)
    assert (B.y(1) ** 3).is_zero()


def test_tau_retraction_is_a_ring_map():
    C, T = Cube(12), Cube(12, 0, 1)
    els = [e for d in range(5) for e in elements_of_degree(C, d)]
    for a, b in itertools.product(els, repeat=2):
        if a.degree + b.degree <= 12:
            assert tau_retraction(T, a * b) == tau_retraction(T, a) * tau_retraction(T, b)


def test_cube_argument_checks():
    with pytest.raises(ValueError):
        Cube(4, 3, 1)
    with pytest.raises(ValueError):
        Cube(4, bar=True)


# -- rado -------------------------------------------------------------------


def test_rado_edges():
    assert edge(0, 1) and edge(1, 0)
    assert not edge(0, 2)
    with pytest.raises(ValueError):
        edge(3, 3)


def test_rado_basis_is_cliques():
    R = Rado(32)
    for d in range(33):
        idx = [i for i in range(6) if d >> i & 1]
        clique = all(edge(a, b) for a, b in itertools.combinations(idx, 2))
        assert R.dim(d) == int(clique)


def test_rado_product():
    R = Rado(8)
    assert R.x(0) * R.x(1) == R.x(0, 1)
    assert (R.x(0) * R.x(2)).is_zero()
    with pytest.raises(ValueError):
        R.x(0, 2)


def test_extend_embedding_is_full():
    g = Graph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("a", "c")])
    f = extend_embedding(g, ["a"], {"a": 0})
    assert is_full_embedding(g, f)


def test_extend_embedding_rejects_bad_start():
    g = Graph("ab", [("a", "b")])
    with pytest.raises(ValueError):
        extend_embedding(g, ["a", "b"], {"a": 0, "b": 2})


@pytest.mark.parametrize("gens,target", [([0b11], 0b10), ([0b1, 0b100], 0b10), ([0b1010], 0b1011)])
def test_rado_witness(gens, target):
    n = rado_witness(gens, target)
    if any(a & ~target == 0 for a in gens):
        assert n is None
    else:
        assert check_rado_witness(gens, target, n)


# -- epsilon ------------------------------------------------------------------


def brute_epsilon_dim(d):
    gens = sorted(enumerate_delta_le(d))
    count = 0

    def rec(i, rem, chosen):
        nonlocal count
        if rem == 0:
            count += in_MA(dict(chosen))
            return
        if i == len(gens):
            return
        g = gens[i]
        for e in range(rem // delta(g) + 1):
            rec(i + 1, rem - e * delta(g), chosen + ([(g, e)] if e else []))

    rec(0, d, [])
    return count


def test_epsilon_dimensions_by_brute_force():
    A = Epsilon(9)
    for d in range(10):
        assert A.dim(d) == brute_epsilon_dim(d)


def test_epsilon_relation():
    A = Epsilon(12)
    gens = sorted(enumerate_delta_le(4))
    for i, j in itertools.combinations(gens, 2):
        m = mu(i, j)
        if delta(i) + delta(j) * (m + 1) <= 12:
            assert (A.x(i) * A.x(j) ** (m + 1)).is_zero()
        if delta(i) + delta(j) * m <= 12 and m:
            assert not (A.x(i) * A.x(j) ** m).is_zero()


def test_epsilon_witness_checks():
    gens = sorted(enumerate_delta_le(3))
    a, b = gens[0], gens[1]
    ks = epsilon_witness([((a, 1),)], ((b, 1),))
    assert check_epsilon_witness([((a, 1),)], ((b, 1),), ks)
    assert epsilon_witness([((a, 1),)], ((a, 1), (b, 1))) is None
