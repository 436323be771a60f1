import itertools
import random

import pytest

from injring.baer import (
    BadUpTo,
    GoodBlock,
    GoodTransporter,
    TestPair,
    classification_record,
    classify,
    cube_lift,
    enumerate_bad_pairs,
    find_block,
    find_transporter,
    is_block,
    is_transporter,
    iter_nondegenerate_pairs,
    lift_block,
    reduce_nondegenerate,
    unit_block,
    weight,
)
from injring.engine import BoundError, PolynomialEngine, QuotientEngine, elements_of_degree
from injring.zoo import Cube, Exterior, Rado


@pytest.fixture(scope="module")
def E():
    return Exterior(16)


@pytest.fixture(scope="module")
def xy():
    base = PolynomialEngine([("x", 1), ("y", 1)], 16)
    return QuotientEngine(base, [base.gen("x") * base.gen("y")])


def test_pair_degree_invariant(E):
    with pytest.raises(ValueError):
        TestPair([E.x(0)], [E.x(0)], 1)
    with pytest.raises(ValueError):
        TestPair([E.x(0)], [], 0)


def test_weights(E):
    assert weight(TestPair([], [], 0)) == 0
    assert weight(TestPair([E.x(0)], [E.x(0)], 0)) == 3
    assert weight(TestPair([E.x(0)], [E.zero(-2)], -3)) == 2


def test_transporter_examples(E):
    assert find_transporter(TestPair([E.x(0)], [E.x(0)], 0), E) == E.unit()
    C = Cube(16)
    tp = TestPair([C.y(0)], [C.y(0) * C.y(1)], 2)
    m = find_transporter(tp, C)
    # y0^3 = y0*y1, so y1 and y0^2 both transport
    assert is_transporter(C.y(1), tp) and is_transporter(C.y(0, 2), tp)
    assert m in (C.y(1), C.y(0, 2))


def test_rado_counterexample():
    R = Rado(20)
    tp = TestPair([R.x(0), R.x(2)], [R.zero(1), R.x(2)], 0)
    assert find_transporter(tp, R) is None
    assert find_block(tp, R, 20) is None
    res = classify(tp, R, 20)
    assert res == BadUpTo(20)
    assert classification_record(res)["result"] == "BadUpTo(20)"


def test_exterior_block_example(E):
    tp = TestPair([E.x(0)], [E.x(1)], 1)
    e, b = find_block(tp, E)
    # e is the degree of b.u; the block entry itself has degree 1
    assert e == 2 and b == (E.x(0),) and b[0].degree == 1
    assert isinstance(classify(tp, E), GoodBlock)


def test_zero_v_has_zero_transporter_and_no_block(E):
    tp = TestPair([E.x(0)], [E.zero(3)], 2)
    assert find_block(tp, E) is None
    m = find_transporter(tp, E)
    assert m is not None and m.is_zero()


def test_identity_pair_is_good_transporter(xy):
    for d in range(1, 4):
        for a in elements_of_degree(xy, d):
            res = classify(TestPair([a], [a], 0), xy)
            assert isinstance(res, GoodTransporter) and res.m == xy.unit()


def test_reduce_nondegenerate(E):
    tp = TestPair([E.zero(1), E.x(0)], [E.x(1), E.x(1)], 1)
    kind, i = reduce_nondegenerate(tp)
    assert (kind, i) == ("block", 0)
    b = unit_block(tp, E, i)
    assert is_block(b, tp)

    tp = TestPair([E.zero(1), E.x(0)], [E.zero(1), E.x(0)], 0)
    kind, reduced, kept = reduce_nondegenerate(tp)
    assert kept == [1] and reduced.u == (E.x(0),)
    assert is_transporter(find_transporter(reduced, E), tp)

    tp = TestPair([E.x(0)], [E.x(1)], 1)
    kind, reduced, kept = reduce_nondegenerate(tp)
    assert reduced == tp


def test_reduced_blocks_lift(E):
    tp = TestPair([E.zero(2), E.x(0)], [E.zero(3), E.x(1)], 1)
    _, reduced, kept = reduce_nondegenerate(tp)
    e, b = find_block(reduced, E)
    assert is_block(lift_block(tp, E, kept, e, b), tp)


def test_transporter_search_is_complete(xy):
    # no transporter reported means none exists in R_d
    rng = random.Random(7)
    for _ in range(60):
        d = rng.randint(0, 2)
        r = rng.randint(1, 2)
        u, v = [], []
        for _ in range(r):
            a = rng.randint(0, 2)
            u.append(rng.choice(list(elements_of_degree(xy, a, nonzero=False))))
            v.append(rng.choice(list(elements_of_degree(xy, a + d, nonzero=False))))
        tp = TestPair(u, v, d)
        m = find_transporter(tp, xy)
        brute = [c for c in elements_of_degree(xy, d, nonzero=False) if is_transporter(c, tp)]
        assert (m is None) == (not brute)
        if m is not None:
            assert is_transporter(m, tp)


def test_found_blocks_verify(xy):
    for tp in iter_nondegenerate_pairs(xy, 4):
        res = classify(tp, xy, 12)
        if isinstance(res, GoodBlock):
            assert is_block(res.b, tp)
        elif isinstance(res, GoodTransporter):
            assert is_transporter(res.m, tp)


def test_xy_has_the_expected_bad_pair(xy):
    x = xy.project(xy.base.gen("x"))
    y = xy.project(xy.base.gen("y"))
    bad = enumerate_bad_pairs(xy, 6, 16)
    want = TestPair([x, y], [x, xy.zero(1)], 0)
    keys = {tp.key() for tp in bad}
    assert want.key() in keys or TestPair([y, x], [xy.zero(1), x], 0).key() in keys


def test_enumeration_edges(E):
    assert enumerate_bad_pairs(E, 0) == []
    with pytest.raises(ValueError):
        enumerate_bad_pairs(E, 11)
    with pytest.raises(BoundError):
        enumerate_bad_pairs(E, 2, dmax=17)


def test_enumeration_is_canonical_up_to_permutation(xy):
    seen = set()
    for tp in iter_nondegenerate_pairs(xy, 5):
        assert all(a.coords for a in tp.u)
        assert any(b.coords for b in tp.v)
        k = (tp.d, tuple(sorted((a.degree, a.coords, b.coords) for a, b in zip(tp.u, tp.v))))
        assert k not in seen
        seen.add(k)
        assert weight(tp) <= 5


def test_exterior_has_no_small_bad_pairs(E):
    assert enumerate_bad_pairs(E, 5, 16) == []


def test_goodness_persists_from_truncation():
    small, big = Exterior(0, 3), Exterior(16)

    def move(a):
        return big.element(a.degree, a.labels())

    for tp in iter_nondegenerate_pairs(small, 5):
        res = classify(tp, small)
        bigtp = TestPair([move(a) for a in tp.u], [move(b) for b in tp.v], tp.d)
        if isinstance(res, GoodTransporter):
            assert is_transporter(move(res.m), bigtp)
        elif isinstance(res, GoodBlock):
            # blocks above the top of E(3) live in degrees that E does not kill
            if res.e + tp.d <= small.top_degree():
                assert is_block(tuple(move(x) for x in res.b), bigtp)


def test_concatenated_transporters_in_cube():
    # if (u, v) and (u', v') share a transporter the combined pair has one
    C = Cube(12)
    rng = random.Random(3)
    for _ in range(30):
        d = rng.randint(0, 3)
        m = rng.choice(list(elements_of_degree(C, d, nonzero=False)))
        us = [rng.choice(list(elements_of_degree(C, rng.randint(1, 4)))) for _ in range(3)]
        tp = TestPair(us, [m * a for a in us], d)
        t = find_transporter(tp, C)
        assert t is not None and is_transporter(t, tp)


def test_cube_lift():
    C = Cube(48)
    pairs = list(itertools.islice(iter_nondegenerate_pairs(Cube(16), 4), 60))
    for tp in pairs:
        moved = TestPair([C.include(a) for a in tp.u], [C.include(b) for b in tp.v], tp.d)
        rep = cube_lift(moved, C)
        assert rep.verified, rep.as_record()
    with pytest.raises(ValueError):
        cube_lift(pairs[0], Cube(16, 0, 3))
