"""Self-injective adjustment by adjoining block variables.

A ``PresentedRing`` is a quotient of a free polynomial ring over GF(2) with
positively graded generators.  ``adjoin_blocks`` adds variables b_{t,j} and
relators w_t = sum_j b_{t,j} u_{t,j} so that every listed transporter-free
pair acquires the block b_t.  The tower only ever exists as finitely many
stages, each with its bound recorded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from . import baer
from .engine import Element, PolynomialEngine, QuotientEngine, hilbert

DEFAULT_SLACK = 8

_TERM = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_polynomial(free: PolynomialEngine, text: str) -> Element:
    """Parse ``x*y + y^2`` style input; the sum must be homogeneous."""
    terms = [t.strip() for t in text.split("+")]
    out: Element | None = None
    for t in terms:
        if not t:
            raise ValueError(f"empty term in {text!r}")
        label = [0] * len(free.gens)
        if t != "1":
            for f in t.split("*"):
                m = _TERM.match(f.strip())
                if not m or m.group(1) not in free._names:
                    raise ValueError(f"bad factor {f!r} in {text!r}")
                label[free._names[m.group(1)]] += int(m.group(2) or 1)
        lab = tuple(label)
        free.check_degree(free.label_degree(lab))
        mono = free.monomial(lab)
        if out is None:
            out = mono
        elif out.degree != mono.degree:
            raise ValueError(f"{text!r} is not homogeneous")
        else:
            out = out + mono
    assert out is not None
    return out


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [p.strip() for p in parts]


@dataclass
class PresentedRing:
    generators: list[tuple[str, int]]
    relators: list[str]
    dmax: int
    stage: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        self.generators = [(str(n), int(d)) for n, d in self.generators]
        self.free = PolynomialEngine(self.generators, self.dmax)
        self.relator_elements = [parse_polynomial(self.free, r) for r in self.relators]
        self.engine = QuotientEngine(self.free, self.relator_elements, self.dmax)
        self.engine.name = self.describe()

    @classmethod
    def parse(cls, text: str, dmax: int) -> "PresentedRing":
        """``f2[x:1,y:1]/(x*y)``; a bare generator name has degree 1."""
        m = re.fullmatch(r"\s*f2\[(.*?)\]\s*(?:/\s*\((.*)\))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse presentation {text!r}")
        gens = []
        for g in _split_top(m.group(1)):
            name, _, deg = g.partition(":")
            gens.append((name.strip(), int(deg) if deg else 1))
        rels = _split_top(m.group(2)) if m.group(2) else []
        return cls(gens, rels, dmax)

    def describe(self) -> str:
        gs = ",".join(f"{n}:{d}" for n, d in self.generators)
        return f"f2[{gs}]" + (f"/({', '.join(self.relators)})" if self.relators else "")

    def with_dmax(self, dmax: int) -> "PresentedRing":
        return PresentedRing(self.generators, self.relators, dmax)

    def gen(self, name: str) -> Element:
        return self.engine.project(self.free.gen(name))

    def element(self, text: str) -> Element:
        return self.engine.project(parse_polynomial(self.free, text))

    def hilbert(self, upto: int | None = None) -> list[int]:
        return hilbert(self.engine, self.dmax if upto is None else upto)

    def polynomial_text(self, a: Element) -> str:
        """A representative of ``a`` in generator notation."""
        if a.engine is self.engine:
            a = self.engine.lift(a)
        labs = a.labels()
        return " + ".join(self.free.format_label(lab) for lab in labs) if labs else "0"


def embed(old: PresentedRing, new: PresentedRing, a: Element) -> Element:
    """The inclusion eta: old generators are a prefix of the new ones."""
    if a.engine is not old.engine:
        raise ValueError("element does not live in the source ring")
    if a.degree < 0 or not a.coords:
        return new.engine.zero(a.degree)
    pad = (0,) * (len(new.generators) - len(old.generators))
    lifted = old.engine.lift(a)
    labs = [lab + pad for lab in lifted.labels()]
    return new.engine.project(new.free.element(a.degree, labs))


def retract(new: PresentedRing, old: PresentedRing, a: Element) -> Element:
    """The retraction pi sending every adjoined variable to zero."""
    n = len(old.generators)
    if a.degree < 0 or not a.coords:
        return old.engine.zero(a.degree)
    lifted = new.engine.lift(a)
    labs = [lab[:n] for lab in lifted.labels() if not any(lab[n:])]
    return old.engine.project(old.free.element(a.degree, labs))


def embed_pair(old: PresentedRing, new: PresentedRing, tp: baer.TestPair) -> baer.TestPair:
    return baer.TestPair([embed(old, new, a) for a in tp.u], [embed(old, new, b) for b in tp.v], tp.d)


@dataclass
class AdjoinReport:
    names: list[list[str]]
    degrees: list[list[int]]
    relators: list[str]
    agree_below: int
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def adjoin_blocks(
    R: PresentedRing,
    pairs: Sequence[baer.TestPair],
    m: int,
    dmax: int | None = None,
    tag: str = "0",
) -> PresentedRing:
    """Adjoin b_{t,j} with |b_{t,j}| = m + d_t - |u_{t,j}| and relators w_t."""
    if m < 1:
        raise ValueError("m must be positive")
    if not pairs:
        return R
    for tp in pairs:
        if any(a.engine is not R.engine for a in tp.u + tp.v):
            raise ValueError("pair does not live in the given ring")
        if baer.find_transporter(tp, R.engine) is not None:
            raise ValueError(f"pair {tp.describe()} has a transporter")
    taken = {n for n, _ in R.generators}
    gens = list(R.generators)
    rels = list(R.relators)
    names, degrees = [], []
    for t, tp in enumerate(pairs):
        dt = max(a.degree for a in tp.u)
        row_n, row_d, terms = [], [], []
        for j, a in enumerate(tp.u):
            name = f"b{tag}_{t}_{j}"
            while name in taken:
                name += "_"
            taken.add(name)
            deg = m + dt - a.degree
            gens.append((name, deg))
            row_n.append(name)
            row_d.append(deg)
            lifted = R.engine.lift(a)
            for lab in lifted.labels():
                mono = R.free.format_label(lab)
                terms.append(name if mono == "1" else f"{name}*{mono}")
        names.append(row_n)
        degrees.append(row_d)
        rels.append(" + ".join(terms))
    new_dmax = R.dmax if dmax is None else dmax
    # the block check needs b_t.v_t, which lives in degree m + d_t + d
    need = max(m + max(a.degree for a in tp.u) + tp.d for tp in pairs)
    new = PresentedRing(gens, rels, max(new_dmax, need))
    new.stage = {"adjoin": _verify_adjoin(R, new, pairs, names, m)}
    return new


def _verify_adjoin(R, new, pairs, names, m) -> AdjoinReport:
    checks = {}
    checks["degree0_is_F2"] = new.engine.dim(0) == 1
    checks["generators_positive"] = all(d > 0 for _, d in new.generators)
    low = min(m, R.dmax + 1, new.dmax + 1)
    checks["agree_below_m"] = all(R.engine.dim(k) == new.engine.dim(k) for k in range(low))
    # eta and pi are well defined iff relators go to relators
    old_rels = set(R.relators)
    checks["eta_ring_map"] = old_rels.issubset(new.relators)
    n_old = len(R.generators)
    pi_ok = True
    for w in new.relator_elements[len(R.relators):]:
        if any(not any(lab[n_old:]) for lab in w.labels()):
            pi_ok = False
    checks["pi_ring_map"] = pi_ok
    pe = True
    for d in range(0, R.dmax + 1):
        for a in R.engine.basis_elements(d):
            if retract(new, R, embed(R, new, a)) != a:
                pe = False
    checks["pi_eta_identity"] = pe
    blocks = True
    for tp, row in zip(pairs, names):
        b = [new.gen(n) for n in row]
        if not baer.is_block(b, embed_pair(R, new, tp)):
            blocks = False
    checks["b_is_block"] = blocks
    report = AdjoinReport(
        names=names,
        degrees=[[d for n, d in new.generators if n in set(row)] for row in names],
        relators=new.relators[len(R.relators):],
        agree_below=m,
        checks=checks,
    )
    if not report.ok:
        raise AssertionError(f"adjoin_blocks verification failed: {checks}")
    return report


def blocks_of(R: PresentedRing) -> list[list[Element]]:
    rep = (R.stage or {}).get("adjoin")
    if rep is None:
        return []
    return [[R.gen(n) for n in row] for row in rep.names]


# -- tower ------------------------------------------------------------------


@dataclass
class StageReport:
    k: int
    m: int
    dmax: int
    weight: int
    bad: list[dict]
    adjoined: list[dict]
    agree_below: int
    hilbert_before: list[int]
    hilbert_after: list[int]
    all_good_after: bool

    def as_record(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "dmax": self.dmax,
            "weight_cap": self.weight,
            "bad_pairs": self.bad,
            "adjoined": self.adjoined,
            "agree_below": self.agree_below,
            "hilbert_before": self.hilbert_before,
            "hilbert_after": self.hilbert_after,
            "all_good_after": self.all_good_after,
        }


def adjust_step_report(
    R: PresentedRing, k: int, m: int, slack: int = DEFAULT_SLACK
) -> tuple[PresentedRing, StageReport]:
    """One tower stage: give every bad pair of weight <= k a block.

    Pairs are handled greedily: after each adjunction the remaining pairs are
    reclassified in the enlarged ring and only those still bad get blocks.
    """
    bound = k + m + slack
    base = R if R.dmax >= bound else R.with_dmax(bound)
    bad = baer.enumerate_bad_pairs(base.engine, k, bound)
    cur = base
    adjoined = []
    step = 0
    for tp in bad:
        here = embed_pair(base, cur, tp) if cur is not base else tp
        res = baer.classify(here, cur.engine, bound)
        if not isinstance(res, baer.BadUpTo):
            continue
        if baer.find_transporter(here, cur.engine) is not None:
            continue
        nxt = adjoin_blocks(cur, [here], k + m, dmax=max(bound, cur.dmax), tag=f"{k}_{step}")
        rep = nxt.stage["adjoin"]
        adjoined.append({"pair": tp.describe(), "generators": rep.names[0], "degrees": rep.degrees[0], "relator": rep.relators[0]})
        cur = nxt
        step += 1
    next_bound = k + 1 + m + slack
    if cur.dmax < next_bound:
        cur = cur.with_dmax(next_bound)
    all_good = all(
        not isinstance(baer.classify(embed_pair(base, cur, tp), cur.engine, bound), baer.BadUpTo) for tp in bad
    )
    top = min(base.dmax, cur.dmax)
    h_before = base.hilbert(top)
    h_after = cur.hilbert(top)
    agree = all(h_before[i] == h_after[i] for i in range(min(k + m, top + 1)))
    if not agree:
        raise AssertionError("stage does not agree with its predecessor below k + m")
    report = StageReport(
        k=k,
        m=m,
        dmax=bound,
        weight=k,
        bad=[tp.describe() for tp in bad],
        adjoined=adjoined,
        agree_below=k + m,
        hilbert_before=h_before,
        hilbert_after=h_after,
        all_good_after=all_good,
    )
    cur = PresentedRing(cur.generators, cur.relators, cur.dmax, stage={"step": report})
    return cur, report


def adjust_step(R: PresentedRing, k: int, m: int, slack: int = DEFAULT_SLACK) -> PresentedRing:
    return adjust_step_report(R, k, m, slack)[0]


def adjust_tower(
    R: PresentedRing, steps: int, m: int, start: int = 0, slack: int = DEFAULT_SLACK
) -> list[PresentedRing]:
    """Stages R'(0), ..., R'(steps); stage i handles weight start + i - 1."""
    tower = [R]
    for i in range(steps):
        tower.append(adjust_step(tower[-1], start + i, m, slack))
    return tower


def stabilized_degrees(tower: Sequence[PresentedRing]) -> int:
    """Largest s such that the last two stages agree in all degrees < s."""
    if len(tower) < 2:
        return tower[-1].dmax + 1 if tower else 0
    a, b = tower[-2], tower[-1]
    top = min(a.dmax, b.dmax)
    for i in range(top + 1):
        if a.engine.dim(i) != b.engine.dim(i):
            return i
    return top + 1
