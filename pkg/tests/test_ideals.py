import pytest

from injring.engine import BoundError, PolynomialEngine, QuotientEngine, elements_of_degree
from injring.ideals import (
    ann,
    conductor,
    dann_check,
    ideal_intersection,
    ideal_span,
    ideal_sum,
    incoherence_probe,
    poincare_check,
    socle,
    step_check,
    syzygy_slice,
    whole_ring,
)
from injring.zoo import Cube, Epsilon, Exterior, Rado
from injring.ordinals import parse_ordinal


def brute_ann(engine, gens, e):
    return {a.coords for a in elements_of_degree(engine, e, nonzero=False)
            if all((a * g).is_zero() for g in gens)}


def brute_span_of(sub):
    span = {0}
    for r in sub.rows:
        span |= {s ^ r for s in span}
    return span


@pytest.fixture
def xy():
    base = PolynomialEngine([("x", 1), ("y", 1)], 8)
    return QuotientEngine(base, [base.gen("x") * base.gen("y")])


def test_ann_matches_brute_force(xy):
    x = xy.project(xy.base.gen("x"))
    A = ann(xy, [x])
    for e in range(A.dmax + 1):
        assert brute_span_of(A[e]) == brute_ann(xy, [x], e)


def test_ann_in_cube_matches_brute_force():
    C = Cube(12)
    u = [C.x(1)]
    A = ann(C, u)
    for e in range(A.dmax + 1):
        assert brute_span_of(A[e]) == brute_ann(C, u, e)


def test_ann_refuses_beyond_bound(xy):
    x = xy.project(xy.base.gen("x"))
    with pytest.raises(BoundError):
        ann(xy, [x], dmax=8)


def test_ideal_lattice(xy):
    x = xy.project(xy.base.gen("x"))
    y = xy.project(xy.base.gen("y"))
    I, J = ideal_span(xy, [x]), ideal_span(xy, [y])
    assert ideal_intersection(I, J).dims() == [0] * 9
    assert ideal_sum(I, J).dims() == [0] + [2] * 8
    assert whole_ring(xy).dims() == [1] + [2] * 8


def test_conductor(xy):
    x = xy.project(xy.base.gen("x"))
    y = xy.project(xy.base.gen("y"))
    I = ideal_span(xy, [x * x])
    K = conductor(I, x)
    # (x^2 : x) contains x and y (since xy = 0) but not 1
    assert K.contains(x) and K.contains(y) and not K.contains(xy.unit())


def test_dann_exterior_principal():
    E = Exterior(16)
    rep = dann_check(E, [E.x(0)])
    assert rep.equal


def test_dann_epsilon_discrepancy_is_certified():
    A = Epsilon(16)
    i, j = parse_ordinal("w^2"), parse_ordinal("w+1")
    rep = dann_check(A, [A.x(i) + A.x(j)])
    assert not rep.equal
    assert rep.witness is not None and rep.evidence_upto is not None
    assert "degree" in rep.as_record()


def test_dann_rado_monomials_certified():
    R = Rado(16)
    rep = dann_check(R, [R.x(0, 1)])
    assert rep.equal
    assert all("witness_index" in c for c in rep.certified)


def test_socle_of_truncated_exterior():
    E = Exterior(0, 3)
    S = socle(E)
    assert S.dims() == [0] * 7 + [1]


def test_poincare():
    assert poincare_check(Cube(0, 0, 2, bar=True)).passed
    assert poincare_check(Exterior(0, 4)).passed
    assert not poincare_check(Cube(8)).passed


def test_poincare_detects_non_vanishing():
    assert not poincare_check(Exterior(16), top=7).passed


def test_incoherence_probe_counts_grow():
    C = Cube(24)
    rep = incoherence_probe(C, C.x(1))
    assert rep.cumulative == sorted(rep.cumulative)
    assert not rep.flagged_zero
    assert incoherence_probe(C, C.zero(2)).flagged_zero


def test_syzygy_slice_vectors_are_syzygies():
    C = Cube(10, 0, 4)
    u = [C.y(0), C.y(1)]
    for d in range(11):
        sl = syzygy_slice(u, 4, d, engine=C)
        for v in sl.vectors():
            acc = C.zero(d)
            for a, b in zip(sl.u, v):
                if b.degree >= 0:
                    acc = acc + a * b
            assert acc.is_zero()


def test_step_check():
    C = Cube(12)
    assert step_check([C.y(0), C.y(1)], 4, 12).holds


def test_step_check_rejects_out_of_range_entries():
    C = Cube(12)
    with pytest.raises(ValueError):
        step_check([C.y(3)], 4, 8)
