"""Degreewise ideal arithmetic.

Everything here is a statement about graded pieces up to an explicit bound.
Annihilators need products one level up, so ``ann(J)`` is only exact in
degrees ``e`` with ``e + |g| <= engine.dmax`` for every generator ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import gf2
from .engine import BoundError, Element, RingEngine, Subspace, product_space
from .zoo.cube import Cube, is_flat
from .zoo.epsilon import Epsilon, check_epsilon_witness, epsilon_witness
from .zoo.rado import Rado, check_rado_witness, rado_witness


@dataclass
class IdealSlice:
    engine: RingEngine
    slices: dict[int, Subspace]
    dmax: int
    generators: tuple[Element, ...] = ()

    def __getitem__(self, d: int) -> Subspace:
        if d > self.dmax:
            raise BoundError(f"ideal slice only known up to degree {self.dmax}")
        s = self.slices.get(d)
        if s is None:
            return Subspace.zero(d, self.engine.dim(d))
        return s

    def dims(self) -> list[int]:
        return [self[d].rank for d in range(self.dmax + 1)]

    def contains(self, a: Element) -> bool:
        return self[a.degree].contains(a.coords)

    def elements(self, d: int) -> list[Element]:
        return [Element(self.engine, d, r) for r in self[d].rows]

    def __eq__(self, other):
        if not isinstance(other, IdealSlice):
            return NotImplemented
        top = min(self.dmax, other.dmax)
        return self.engine is other.engine and all(self[d] == other[d] for d in range(top + 1))

    def first_difference(self, other: "IdealSlice") -> int | None:
        for d in range(min(self.dmax, other.dmax) + 1):
            if self[d] != other[d]:
                return d
        return None


def _degrees(engine: RingEngine, dmax: int | None) -> int:
    top = engine.dmax if dmax is None else dmax
    if top > engine.dmax:
        raise BoundError(f"dmax={top} exceeds the engine bound {engine.dmax}")
    return top


def ideal_span(engine: RingEngine, gens: Sequence[Element], dmax: int | None = None) -> IdealSlice:
    top = _degrees(engine, dmax)
    gens = tuple(gens)
    slices = {}
    for d in range(top + 1):
        rows: list[int] = []
        for g in gens:
            if g.coords and d - g.degree >= 0:
                rows.extend(engine.mul_map(g, d - g.degree))
        slices[d] = Subspace(d, rows, engine.dim(d))
    return IdealSlice(engine, slices, top, gens)


def whole_ring(engine: RingEngine, dmax: int | None = None) -> IdealSlice:
    return ideal_span(engine, [engine.unit()], dmax)


def _killing_kernel(engine: RingEngine, e: int, killers: Sequence[Element]) -> Subspace:
    """Elements of degree e multiplying every killer to zero."""
    n = engine.dim(e)
    cols = [0] * n
    shift = 0
    for g in killers:
        if not g.coords:
            continue
        w = engine.dim(e + g.degree)
        if w == 0:
            continue
        img = engine.mul_map(g, e)
        for j in range(n):
            cols[j] |= img[j] << shift
        shift += w
    if shift == 0:
        return Subspace.full(e, n)
    return Subspace(e, gf2.kernel(cols, shift), n, reduced=True)


def ann(engine: RingEngine, gens: Sequence[Element], dmax: int | None = None) -> IdealSlice:
    """Annihilator of the ideal generated by ``gens``, exact in every returned degree."""
    gens = [g for g in gens if g.coords]
    top = engine.dmax - max((g.degree for g in gens), default=0)
    if dmax is not None:
        if dmax > top:
            raise BoundError(f"ann is exact only up to degree {top} with dmax={engine.dmax}")
        top = dmax
    slices = {e: _killing_kernel(engine, e, gens) for e in range(top + 1)}
    return IdealSlice(engine, slices, top)


def ann_slice(ideal: IdealSlice, dmax: int | None = None) -> IdealSlice:
    """Elements killing every computed degree of ``ideal`` that fits under the bound.

    For an ideal only known up to a bound this over-approximates the true
    annihilator: degree f uses the pieces ideal_e with e <= engine.dmax - f.
    """
    eng = ideal.engine
    top = _degrees(eng, dmax)
    slices = {}
    for f in range(top + 1):
        killers = []
        for e in range(min(ideal.dmax, eng.dmax - f) + 1):
            killers.extend(ideal.elements(e))
        slices[f] = _killing_kernel(eng, f, killers)
    return IdealSlice(eng, slices, top)


def ideal_sum(a: IdealSlice, b: IdealSlice) -> IdealSlice:
    top = min(a.dmax, b.dmax)
    return IdealSlice(a.engine, {d: a[d] + b[d] for d in range(top + 1)}, top, a.generators + b.generators)


def ideal_intersection(a: IdealSlice, b: IdealSlice) -> IdealSlice:
    top = min(a.dmax, b.dmax)
    return IdealSlice(a.engine, {d: a[d] & b[d] for d in range(top + 1)}, top)


def conductor(ideal: IdealSlice, a: Element, dmax: int | None = None) -> IdealSlice:
    """(J : a) = {r : r a in J}, computed as a preimage degree by degree."""
    eng = ideal.engine
    top = ideal.dmax - a.degree if dmax is None else dmax
    if top + a.degree > ideal.dmax:
        raise BoundError("conductor needs the ideal one |a| above the requested degree")
    slices = {}
    for e in range(top + 1):
        tgt = ideal[e + a.degree]
        cols = [tgt.reduce(c) for c in eng.mul_map(a, e)]
        slices[e] = Subspace(e, gf2.kernel(cols, eng.dim(e + a.degree)), eng.dim(e), reduced=True)
    return IdealSlice(eng, slices, top)


# -- double annihilator ----------------------------------------------------


@dataclass
class DannReport:
    equal: bool
    checked_upto: int
    dmax: int
    degree: int | None = None
    witness: Element | None = None
    certified: list[dict] = field(default_factory=list)
    # a discrepancy is only evidence: the witness kills ann(J) up to this degree
    evidence_upto: int | None = None

    def as_record(self) -> dict:
        out = {
            "equal": self.equal,
            "checked_upto": self.checked_upto,
            "dmax": self.dmax,
            "certified_monomials": len(self.certified),
        }
        if not self.equal:
            out["degree"] = self.degree
            out["witness"] = str(self.witness)
            out["evidence_upto"] = self.evidence_upto
            out["note"] = (
                "the witness annihilates ann(J) in degrees up to evidence_upto; "
                "a larger dmax can remove a discrepancy but never an equality"
            )
        return out


def _is_monomial(a: Element) -> bool:
    return a.coords != 0 and a.coords & (a.coords - 1) == 0


def _monomial_spanned(s: Subspace) -> bool:
    return all(s.contains(1 << i) for r in s.rows for i in gf2.bits(r))


def monomial_certifier(engine: RingEngine) -> Callable | None:
    """Label-level proof that a monomial is outside ann^2 of a monomial ideal."""
    if isinstance(engine, Rado):
        def cert(gens, target):
            n = rado_witness(gens, target)
            if n is None or not check_rado_witness(gens, target, n):
                return None
            return {"target": engine.format_label(target), "witness_index": n}
        return cert
    if isinstance(engine, Epsilon):
        def cert(gens, target):
            ks = epsilon_witness(gens, target)
            if ks is None or not check_epsilon_witness(gens, target, ks):
                return None
            return {"target": engine.format_label(target), "witness": [str(k) for k in ks]}
        return cert
    return None


def dann_check(engine: RingEngine, gens: Sequence[Element], upto: int | None = None) -> DannReport:
    """Compare J with ann(ann(J)) degree by degree.

    ann(ann(J)) is evaluated from ann(J) in the degrees the bound allows, so
    it can only be too large.  Equality in a degree is therefore a proof for
    that degree.  For monomial ideals in the Rado and epsilon algebras every
    extra monomial is tested against the explicit witness construction,
    which works without any degree bound.
    """
    gens = [g for g in gens if g.coords]
    J = ideal_span(engine, gens)
    A = ann(engine, gens)
    certify = monomial_certifier(engine) if all(_is_monomial(g) for g in gens) else None
    if upto is None:
        upto = engine.dmax if certify else engine.dmax // 2
    upto = min(upto, engine.dmax)
    A2 = ann_slice(A, upto)
    gen_labels = [g.labels()[0] for g in gens]
    certified: list[dict] = []
    for f in range(upto + 1):
        j, a2 = J[f], A2[f]
        if a2 == j:
            continue
        bad = None
        if certify is not None and not _monomial_spanned(a2):
            bad = a2.complement_witness(j)
        elif certify is not None:
            for i, lab in enumerate(engine.basis(f)):
                v = 1 << i
                if a2.contains(v) and not j.contains(v):
                    proof = certify(gen_labels, lab)
                    if proof is None:
                        bad = v
                        break
                    proof["degree"] = f
                    certified.append(proof)
        else:
            bad = a2.complement_witness(j)
        if bad is not None:
            w = Element(engine, f, j.reduce(bad))
            reach = min(A.dmax, engine.dmax - f)
            return DannReport(False, upto, engine.dmax, f, w, certified, reach)
    return DannReport(True, upto, engine.dmax, certified=certified)


# -- socle and duality -----------------------------------------------------


def socle(engine: RingEngine, dmax: int | None = None) -> IdealSlice:
    """ann of the maximal ideal, via the algebra generators."""
    gens = engine.generator_elements()
    top = engine.top_degree()
    if dmax is None:
        dmax = top if top is not None else engine.dmax - max((g.degree for g in gens), default=0)
    slices = {e: _killing_kernel(engine, e, gens) for e in range(dmax + 1)}
    return IdealSlice(engine, slices, dmax)


@dataclass
class PoincareReport:
    passed: bool
    top: int | None
    reason: str = ""
    degree: int | None = None
    dims: list[int] = field(default_factory=list)

    def as_record(self) -> dict:
        out = {"passed": self.passed, "top": self.top, "dims": self.dims}
        if not self.passed:
            out["reason"] = self.reason
            if self.degree is not None:
                out["degree"] = self.degree
        return out


def poincare_check(engine: RingEngine, top: int | None = None) -> PoincareReport:
    if top is None:
        top = engine.top_degree()
    if top is None:
        return PoincareReport(False, None, "no top degree given for the ring")
    try:
        dims = [engine.dim(d) for d in range(top + 1)]
        gens = [g for _, g in engine.generators()]
        above = [engine.dim(d) for d in range(top + 1, top + 1 + max(gens, default=1))]
    except BoundError as exc:
        return PoincareReport(False, top, f"bound exceeded: {exc}")
    if any(above):
        return PoincareReport(False, top, "ring does not vanish above the top degree", top + 1, dims)
    if dims[0] != 1:
        return PoincareReport(False, top, "degree 0 is not one-dimensional", 0, dims)
    if dims[top] != 1:
        return PoincareReport(False, top, "top degree is not one-dimensional", top, dims)
    for i in range(top + 1):
        n, k = dims[i], dims[top - i]
        if n != k:
            return PoincareReport(False, top, "pairing is not square", i, dims)
        if n == 0:
            continue
        rows = []
        for a in engine.basis_elements(i):
            rows.append(sum((a * b).coords << j for j, b in enumerate(engine.basis_elements(top - i))))
        if gf2.rank(rows) != n:
            return PoincareReport(False, top, "degenerate pairing", i, dims)
    return PoincareReport(True, top, dims=dims)


# -- incoherence probe -----------------------------------------------------


def decomposables(engine: RingEngine, e: int) -> Subspace:
    """(m^2)_e, spanned by generator multiples of positive-degree elements."""
    rows: list[int] = []
    for g in engine.generator_elements():
        k = e - g.degree
        if k >= 1:
            rows.extend(engine.mul_map(g, k))
    return Subspace(e, rows, engine.dim(e))


@dataclass
class ProbeReport:
    flagged_zero: bool
    per_degree: list[int]
    cumulative: list[int]
    dmax: int
    note: str = (
        "finite evidence only: growth up to the bound does not prove that the "
        "image of ann(u) in m/m^2 is infinite"
    )

    def as_record(self) -> dict:
        return {
            "zero_element": self.flagged_zero,
            "per_degree": self.per_degree,
            "cumulative": self.cumulative,
            "dmax": self.dmax,
            "note": self.note,
        }


def incoherence_probe(engine: RingEngine, u: Element, dmax: int | None = None) -> ProbeReport:
    """dim of the image of ann(u)_e in (m/m^2)_e for e = 0..dmax."""
    if not u.coords:
        return ProbeReport(True, [], [], dmax or 0, "u = 0: ann(u) is the whole ring")
    top = engine.dmax - u.degree if dmax is None else dmax
    A = ann(engine, [u], top)
    per, cum, tot = [], [], 0
    for e in range(top + 1):
        if e == 0:
            k = 0
        else:
            m2 = decomposables(engine, e)
            k = (A[e] + m2).rank - m2.rank
        per.append(k)
        tot += k
        cum.append(tot)
    return ProbeReport(False, per, cum, top)


# -- cube syzygies ---------------------------------------------------------


def _check_tilde(u: Sequence[Element], p: int) -> None:
    for a in u:
        for lab in a.labels():
            if not is_flat(lab) or len(lab) > max(p - 2, 0):
                raise ValueError(
                    f"entry {a} is not in the span of flat monomials on y_0..y_{p - 3}; "
                    f"the stability step needs u_i there for p={p}"
                )


@dataclass
class SyzygySlice:
    engine: Cube
    u: tuple[Element, ...]
    degree: int
    offsets: list[int]
    space: Subspace

    def vectors(self) -> list[list[Element]]:
        out = []
        for row in self.space.rows:
            out.append(_split(self.engine, row, self.offsets, [self.degree - a.degree for a in self.u]))
        return out


def _split(engine, row, offsets, degrees):
    parts = []
    for off, d in zip(offsets, degrees):
        n = engine.dim(d) if d >= 0 else 0
        parts.append(Element(engine, d, (row >> off) & ((1 << n) - 1)))
    return parts


def syzygy_slice(u: Sequence[Element], p: int, d: int, dmax: int | None = None, engine: Cube | None = None) -> SyzygySlice:
    """K(u,p)_d: vectors v over C[0,p] with |v_i| = d - |u_i| and sum u_i v_i = 0."""
    _check_tilde(u, p)
    if engine is None:
        engine = Cube(dmax if dmax is not None else d, 0, p)
    uu = tuple(engine.include(a) for a in u)
    degs = [d - a.degree for a in uu]
    offs, width = product_space(engine, degs)
    cols = []
    for a, k in zip(uu, degs):
        if k < 0:
            continue
        cols.extend(engine.mul_map(a, k))
    space = Subspace(d, gf2.kernel(cols, engine.dim(d)), width, reduced=True) if width else Subspace.zero(d, 0)
    return SyzygySlice(engine, uu, d, offs, space)


@dataclass
class StepReport:
    holds: bool
    p: int
    dmax: int
    degree: int | None = None
    dims: list[int] = field(default_factory=list)

    def as_record(self) -> dict:
        out = {"holds": self.holds, "p": self.p, "dmax": self.dmax, "dims": self.dims}
        if not self.holds:
            out["degree"] = self.degree
        return out


def step_check(u: Sequence[Element], p: int, dmax: int) -> StepReport:
    """Check K(u,p+1)_d = (C[0,p+1] . K(u,p))_d for every d <= dmax."""
    _check_tilde(u, p)
    small = Cube(dmax, 0, p)
    big = Cube(dmax, 0, p + 1)
    lower = [syzygy_slice(u, p, d, engine=small) for d in range(dmax + 1)]
    dims = []
    for d in range(dmax + 1):
        target = syzygy_slice(u, p + 1, d, engine=big)
        degs = [d - a.degree for a in target.u]
        rows = []
        for d0 in range(d + 1):
            coeffs = big.basis_elements(d - d0)
            for vec in lower[d0].vectors():
                lifted = [big.include(x) for x in vec]
                for c in coeffs:
                    row = 0
                    for off, x, k in zip(target.offsets, lifted, degs):
                        if k >= 0:
                            row |= (c * x).coords << off
                    rows.append(row)
        generated = Subspace(d, rows, target.space.ambient)
        dims.append(target.space.rank)
        if generated != target.space:
            return StepReport(False, p, dmax, d, dims)
    return StepReport(True, p, dmax, dims=dims)
