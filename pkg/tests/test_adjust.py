import pytest

from injring import baer
from injring.adjust import (
    PresentedRing,
    adjoin_blocks,
    adjust_step_report,
    adjust_tower,
    blocks_of,
    embed,
    parse_polynomial,
    retract,
    stabilized_degrees,
)
from injring.engine import elements_of_degree


@pytest.fixture(scope="module")
def R():
    return PresentedRing.parse("f2[x:1,y:1]/(x*y)", 12)


def test_parse_and_describe(R):
    assert R.describe() == "f2[x:1,y:1]/(x*y)"
    assert R.hilbert(5) == [1, 2, 2, 2, 2, 2]
    bare = PresentedRing.parse("f2[x,y:2]", 4)
    assert bare.generators == [("x", 1), ("y", 2)]


def test_parse_polynomial_rejects_bad_input(R):
    with pytest.raises(ValueError):
        parse_polynomial(R.free, "x + y^2")
    with pytest.raises(ValueError):
        parse_polynomial(R.free, "z")
    with pytest.raises(ValueError):
        PresentedRing.parse("Z[x]", 4)


def test_adjoin_rejects_pairs_with_transporters(R):
    x = R.gen("x")
    with pytest.raises(ValueError):
        adjoin_blocks(R, [baer.TestPair([x], [x], 0)], 2)
    with pytest.raises(ValueError):
        adjoin_blocks(R, [], 0)


def test_adjoin_single_block(R):
    x, y = R.gen("x"), R.gen("y")
    tp = baer.TestPair([x, y], [x, R.engine.zero(1)], 0)
    new = adjoin_blocks(R, [tp], 2)
    rep = new.stage["adjoin"]
    assert rep.ok, rep.checks
    assert rep.degrees == [[2, 2]]
    # agreement below m
    assert new.hilbert(1) == R.hilbert(1)
    b = blocks_of(new)[0]
    assert baer.is_block(b, baer.TestPair([embed(R, new, a) for a in tp.u], [embed(R, new, c) for c in tp.v], 0))


def test_embed_and_retract_are_inverse(R):
    x, y = R.gen("x"), R.gen("y")
    new = adjoin_blocks(R, [baer.TestPair([x, y], [x, R.engine.zero(1)], 0)], 2)
    for d in range(5):
        for a in elements_of_degree(R.engine, d):
            assert retract(new, R, embed(R, new, a)) == a
        for a in elements_of_degree(R.engine, d):
            for c in elements_of_degree(R.engine, 1):
                assert embed(R, new, a * c) == embed(R, new, a) * embed(R, new, c)


def test_step_clears_weight_six():
    R = PresentedRing.parse("f2[x:1,y:1]/(x*y)", 16)
    nxt, rep = adjust_step_report(R, 6, 2)
    assert rep.bad and rep.all_good_after
    assert len(rep.adjoined) >= 1
    assert rep.hilbert_before[: rep.agree_below] == rep.hilbert_after[: rep.agree_below]
    _, rep7 = adjust_step_report(nxt, 7, 2)
    assert rep7.all_good_after


def test_identity_step_when_nothing_is_bad():
    R = PresentedRing.parse("f2[x:1]/(x^2)", 8)
    nxt, rep = adjust_step_report(R, 3, 1)
    assert rep.bad == [] and rep.adjoined == []
    assert nxt.generators == R.generators and nxt.relators == R.relators


def test_tower_agreement():
    R = PresentedRing.parse("f2[x:1,y:1]/(x*y)", 16)
    tower = adjust_tower(R, 2, 2, start=5)
    assert len(tower) == 3
    assert stabilized_degrees(tower) >= 5 + 1 + 2
    assert stabilized_degrees(tower[:1]) == tower[0].dmax + 1
