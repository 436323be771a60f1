"""Test pairs, blocks and transporters.

A test pair (u, v) of degree d has |v_i| = |u_i| + d.  A transporter is an
m of degree d with v_i = m u_i for all i; a block is a vector b with
b.u = 0 and b.v != 0.  Transporter search is one linear solve.  Block search
sweeps degrees up to a bound, so failing to find one is only evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import gf2
from .engine import BoundError, Element, RingEngine, product_space

MAX_WEIGHT = 10


@dataclass(frozen=True)
class TestPair:
    __test__ = False  # keep pytest from collecting this class

    u: tuple[Element, ...]
    v: tuple[Element, ...]
    d: int

    def __init__(self, u: Sequence[Element], v: Sequence[Element], d: int):
        u, v = tuple(u), tuple(v)
        if len(u) != len(v):
            raise ValueError("u and v must have the same length")
        for a, b in zip(u, v):
            if b.degree != a.degree + d:
                raise ValueError(f"|v_i| must equal |u_i| + d: got {b.degree} vs {a.degree}+{d}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", d)

    @property
    def length(self) -> int:
        return len(self.u)

    def weight(self) -> int:
        return weight(self)

    def key(self) -> tuple:
        return (self.d, tuple((a.degree, a.coords, b.coords) for a, b in zip(self.u, self.v)))

    def describe(self) -> dict:
        return {
            "u": [str(a) for a in self.u],
            "v": [str(b) for b in self.v],
            "d": self.d,
            "weight": self.weight(),
        }


def weight(tp: TestPair) -> int:
    return sum(1 + max(0, a.degree) + max(0, b.degree) for a, b in zip(tp.u, tp.v))


@dataclass(frozen=True)
class GoodTransporter:
    m: Element

    kind = "transporter"


@dataclass(frozen=True)
class GoodBlock:
    e: int
    b: tuple[Element, ...]

    kind = "block"


@dataclass(frozen=True)
class BadUpTo:
    dmax: int

    kind = "bad"


def _stack(engine: RingEngine, pieces: Sequence[Element]) -> tuple[int, int]:
    """Concatenate coordinates of elements living in different degrees."""
    out, shift = 0, 0
    for p in pieces:
        out |= p.coords << shift
        shift += engine.dim(p.degree) if p.degree >= engine.degree_floor else 0
    return out, shift


def find_transporter(tp: TestPair, engine: RingEngine) -> Element | None:
    d = tp.d
    if d < engine.degree_floor or engine.dim(d) == 0:
        if all(not b.coords for b in tp.v):
            return engine.zero(d)
        return None
    target, width = _stack(engine, tp.v)
    cols = [0] * engine.dim(d)
    shift = 0
    for a, b in zip(tp.u, tp.v):
        w = engine.dim(b.degree) if b.degree >= engine.degree_floor else 0
        if w and a.coords:
            img = engine.mul_map(a, d)
            for j in range(len(cols)):
                cols[j] |= img[j] << shift
        shift += w
    sol = gf2.solve(cols, target, width)
    if sol is None:
        return None
    m = Element(engine, d, sol)
    if any(m * a != b for a, b in zip(tp.u, tp.v)):
        raise AssertionError("transporter failed verification")
    return m


def _block_at(tp: TestPair, engine: RingEngine, e: int) -> tuple[Element, ...] | None:
    degs = [e - a.degree for a in tp.u]
    offs, width = product_space(engine, degs)
    if width == 0:
        return None
    ucols: list[int] = []
    vcols: list[int] = []
    for a, b, k in zip(tp.u, tp.v, degs):
        if k < engine.degree_floor:
            continue
        ucols.extend(engine.mul_map(a, k))
        vcols.extend(engine.mul_map(b, k))
    ker = gf2.kernel(ucols, engine.dim(e))
    for row in ker:
        image = 0
        for j in gf2.bits(row):
            image ^= vcols[j]
        if image:
            parts = []
            for off, k in zip(offs, degs):
                n = engine.dim(k) if k >= engine.degree_floor else 0
                parts.append(Element(engine, k, (row >> off) & ((1 << n) - 1)))
            return tuple(parts)
    return None


def block_range(tp: TestPair, engine: RingEngine, dmax: int | None = None) -> range:
    top = engine.dmax if dmax is None else min(dmax, engine.dmax)
    hi = min(top, engine.dmax - tp.d)
    ceiling = engine.top_degree()
    if ceiling is not None and top >= ceiling:
        # above the top degree everything vanishes, so b.u = 0 is free there
        hi = ceiling - tp.d
    if not tp.u:
        return range(0)
    lo = max(engine.degree_floor, min(a.degree for a in tp.u))
    return range(lo, hi + 1)


def find_block(tp: TestPair, engine: RingEngine, dmax: int | None = None) -> tuple[int, tuple[Element, ...]] | None:
    """Smallest-degree block with b.u in degree at most dmax, or ``None``."""
    if all(not b.coords for b in tp.v):
        return None
    for e in block_range(tp, engine, dmax):
        b = _block_at(tp, engine, e)
        if b is not None:
            if not is_block(b, tp):
                raise AssertionError("block failed verification")
            return e, b
    return None


def is_block(b: Sequence[Element], tp: TestPair) -> bool:
    bu = [x * a for x, a in zip(b, tp.u)]
    bv = [x * c for x, c in zip(b, tp.v)]
    su = bu[0]
    for t in bu[1:]:
        su = su + t
    sv = bv[0]
    for t in bv[1:]:
        sv = sv + t
    return not su.coords and bool(sv.coords)


def is_transporter(m: Element, tp: TestPair) -> bool:
    return all(m * a == b for a, b in zip(tp.u, tp.v))


def reduce_nondegenerate(tp: TestPair):
    """Either ``("block", i)`` when e_i is a block, or ``("pair", reduced, kept)``."""
    for i, (a, b) in enumerate(zip(tp.u, tp.v)):
        if not a.coords and b.coords:
            return ("block", i)
    kept = [i for i, a in enumerate(tp.u) if a.coords]
    reduced = TestPair([tp.u[i] for i in kept], [tp.v[i] for i in kept], tp.d)
    return ("pair", reduced, kept)


def unit_block(tp: TestPair, engine: RingEngine, i: int) -> tuple[Element, ...]:
    e = tp.u[i].degree
    return tuple(engine.unit() if j == i else engine.zero(e - a.degree) for j, a in enumerate(tp.u))


def lift_block(tp: TestPair, engine: RingEngine, kept: Sequence[int], e: int, b: Sequence[Element]) -> tuple[Element, ...]:
    """Insert zero entries for the coordinates stripped by ``reduce_nondegenerate``."""
    pos = {k: j for j, k in enumerate(kept)}
    return tuple(b[pos[i]] if i in pos else engine.zero(e - a.degree) for i, a in enumerate(tp.u))


def classify(tp: TestPair, engine: RingEngine, dmax: int | None = None):
    """Transporter first, then the bounded block sweep."""
    m = find_transporter(tp, engine)
    if m is not None:
        return GoodTransporter(m)
    top = engine.dmax if dmax is None else dmax
    found = find_block(tp, engine, top)
    if found is not None:
        return GoodBlock(*found)
    return BadUpTo(top)


def classification_record(result) -> dict:
    if isinstance(result, GoodTransporter):
        return {"result": "GoodTransporter", "m": str(result.m)}
    if isinstance(result, GoodBlock):
        return {"result": "GoodBlock", "e": result.e, "b": [str(x) for x in result.b]}
    return {"result": f"BadUpTo({result.dmax})", "dmax": result.dmax}


# -- enumeration ------------------------------------------------------------


def _entries(engine: RingEngine, d: int, budget: int) -> list[tuple[int, tuple[Element, Element]]]:
    """(cost, (u_i, v_i)) with u_i nonzero and cost 1 + |u|_+ + |v|_+ <= budget."""
    out = []
    a = max(engine.degree_floor, 0)
    while 1 + a + max(0, a + d) <= budget:
        if a > engine.dmax:
            break
        cost = 1 + a + max(0, a + d)
        nu = engine.dim(a)
        k = a + d
        nv = engine.dim(k)
        for cu in range(1, 1 << nu):
            ue = Element(engine, a, cu)
            for cv in range(1 << nv):
                out.append((cost, (ue, Element(engine, k, cv))))
        a += 1
    return out


def iter_nondegenerate_pairs(engine: RingEngine, W: int) -> Iterator[TestPair]:
    """Nondegenerate pairs of weight <= W, one per permutation class, v not all zero."""
    for d in range(-W, W + 1):
        entries = _entries(engine, d, W)
        if not entries:
            continue
        entries.sort(key=lambda t: (t[1][0].degree, t[1][0].coords, t[1][1].coords))
        n = len(entries)

        def rec(start, budget, chosen):
            if chosen and any(e[1][1].coords for e in chosen):
                yield TestPair([e[1][0] for e in chosen], [e[1][1] for e in chosen], d)
            for i in range(start, n):
                c = entries[i][0]
                if c <= budget:
                    chosen.append(entries[i])
                    yield from rec(i, budget - c, chosen)
                    chosen.pop()

        yield from rec(0, W, [])


def enumerate_bad_pairs(engine: RingEngine, W: int, dmax: int | None = None, cap: int = MAX_WEIGHT) -> list[TestPair]:
    if W > cap:
        raise ValueError(f"weight {W} exceeds the enumeration cap {cap}")
    if W < 0:
        return []
    top = engine.dmax if dmax is None else dmax
    if top > engine.dmax:
        raise BoundError(f"dmax={top} exceeds the engine bound {engine.dmax}")
    bad = []
    for tp in iter_nondegenerate_pairs(engine, W):
        if isinstance(classify(tp, engine, top), BadUpTo):
            bad.append(tp)
    return bad


# -- cube: blocks lifted from C/y_m -------------------------------------------


@dataclass
class LiftReport:
    m: int
    mode: str  # "transporter" or "block"
    witness: tuple[str, ...]
    verified: bool

    def as_record(self) -> dict:
        return {"m": self.m, "mode": self.mode, "witness": list(self.witness), "verified": self.verified}


def cube_lift(tp: TestPair, C) -> LiftReport:
    """Rebuild a witness for a pair in C from the quotient C[0,m]/y_m.

    m is chosen with 2^m above every degree involved.  A transporter there is
    already one in C; a block b there gives the block x_{m+1} b in C.
    """
    from .zoo.cube import Cube

    if C.n != 0 or C.m is not None:
        raise ValueError("cube_lift works on the full cube ring C")
    degs = [tp.d] + [a.degree for a in tp.u] + [b.degree for b in tp.v]
    m = max(1, max(degs).bit_length())
    while (1 << m) <= max(degs):
        m += 1
    bar = Cube(0, 0, m, bar=True)
    sub = Cube(C.dmax, 0, m)
    pu = [bar.project_bar(sub.include(a), bar) for a in tp.u]
    pv = [bar.project_bar(sub.include(b), bar) for b in tp.v]
    ptp = TestPair(pu, pv, tp.d)
    t = find_transporter(ptp, bar)
    if t is not None:
        lifted = C.include(t)
        return LiftReport(m, "transporter", (str(lifted),), is_transporter(lifted, tp))
    found = find_block(ptp, bar)
    if found is None:
        # impossible for a Poincare duality quotient; report rather than raise
        return LiftReport(m, "none", (), False)
    _, bbar = found
    xm = C.x(m + 1)
    b = tuple(xm * C.include(x) for x in bbar)
    return LiftReport(m, "block", tuple(str(x) for x in b), is_block(b, tp))
