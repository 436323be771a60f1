"""Degreewise graded rings over GF(2).

A ring engine enumerates a monomial basis in every degree and multiplies
basis labels.  Homogeneous elements are bitmasks over the basis of their
degree, so a zero element still remembers its degree.  Every engine carries
a degree bound ``dmax`` and refuses to work above it.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from . import gf2

Label = Hashable


class BoundError(ValueError):
    """A computation needed a degree above the engine's bound."""


class Element:
    __slots__ = ("engine", "degree", "coords")

    def __init__(self, engine: "RingEngine", degree: int, coords: int = 0):
        if coords < 0 or coords >> engine.dim(degree):
            raise ValueError(f"coordinates out of range for degree {degree}")
        self.engine = engine
        self.degree = degree
        self.coords = coords

    def is_zero(self) -> bool:
        return self.coords == 0

    def __bool__(self):
        return self.coords != 0

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.engine is other.engine
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.engine), self.degree, self.coords))

    def __add__(self, other: "Element") -> "Element":
        if other.engine is not self.engine:
            raise ValueError("elements of different rings")
        if other.degree != self.degree:
            raise ValueError("cannot add elements of different degrees")
        return Element(self.engine, self.degree, self.coords ^ other.coords)

    __sub__ = __add__

    def __mul__(self, other: "Element") -> "Element":
        return mul(self, other)

    def __pow__(self, n: int) -> "Element":
        out = self.engine.unit()
        for _ in range(n):
            out = out * self
        return out

    def labels(self) -> list[Label]:
        basis = self.engine.basis(self.degree)
        return [basis[i] for i in gf2.bits(self.coords)]

    def __repr__(self):
        return f"Element({self.engine.format_element(self)}, degree={self.degree})"

    def __str__(self):
        return self.engine.format_element(self)


class RingEngine:
    """Abstract degreewise ring.

    Subclasses implement ``_basis(d)`` and either ``_mono_mul(a, b)``
    (returning a label or ``None``) for monomial rings, or override
    ``mul_basis`` directly.
    """

    name = "ring"
    degree_floor = 0

    def __init__(self, dmax: int):
        if dmax < 0:
            raise ValueError("dmax must be non-negative")
        self.dmax = dmax
        self._basis_cache: dict[int, tuple] = {}
        self._index_cache: dict[int, dict] = {}
        self._table_cache: dict[tuple[int, int], list[list[int]]] = {}

    # -- to implement -----------------------------------------------------
    def _basis(self, d: int) -> Sequence[Label]:
        raise NotImplementedError

    def label_degree(self, label: Label) -> int:
        raise NotImplementedError

    def _mono_mul(self, a: Label, b: Label) -> Label | None:
        raise NotImplementedError

    def generators(self) -> list[tuple[Label, int]]:
        """Algebra generators of positive degree up to ``dmax``."""
        raise NotImplementedError

    def format_label(self, label: Label) -> str:
        return str(label)

    def top_degree(self) -> int | None:
        """Degree above which the ring is known to vanish, if any."""
        return None

    # -- basis bookkeeping ------------------------------------------------
    def check_degree(self, d: int) -> None:
        top = self.top_degree()
        if d > self.dmax and (top is None or d <= top):
            raise BoundError(f"degree {d} exceeds bound dmax={self.dmax} of {self.name}")

    def basis(self, d: int) -> tuple:
        b = self._basis_cache.get(d)
        if b is None:
            self.check_degree(d)
            top = self.top_degree()
            if d < self.degree_floor or (top is not None and d > top):
                b = ()
            else:
                b = tuple(self._basis(d))
            self._basis_cache[d] = b
        return b

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def index(self, d: int, label: Label) -> int:
        idx = self._index_cache.get(d)
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.basis(d))}
            self._index_cache[d] = idx
        return idx[label]

    def has_label(self, d: int, label: Label) -> bool:
        try:
            self.index(d, label)
        except KeyError:
            return False
        return True

    # -- elements ---------------------------------------------------------
    def zero(self, d: int) -> Element:
        return Element(self, d, 0)

    def unit(self) -> Element:
        return Element(self, 0, 1)

    def monomial(self, label: Label) -> Element:
        d = self.label_degree(label)
        return Element(self, d, 1 << self.index(d, label))

    def element(self, d: int, labels: Iterable[Label]) -> Element:
        c = 0
        for lab in labels:
            c ^= 1 << self.index(d, lab)
        return Element(self, d, c)

    def basis_elements(self, d: int) -> list[Element]:
        return [Element(self, d, 1 << i) for i in range(self.dim(d))]

    def generator_elements(self) -> list[Element]:
        return [self.monomial(lab) for lab, _ in self.generators()]

    def format_element(self, a: Element) -> str:
        labs = a.labels()
        if not labs:
            return f"0@{a.degree}"
        return " + ".join(self.format_label(lab) for lab in labs)

    # -- multiplication ---------------------------------------------------
    def mul_basis(self, a: Label, b: Label) -> Element:
        d = self.label_degree(a) + self.label_degree(b)
        c = self._mono_mul(a, b)
        if c is None:
            return self.zero(d)
        return Element(self, d, 1 << self.index(d, c))

    def table(self, d1: int, d2: int) -> list[list[int]]:
        """``table[i][j]`` are the coordinates of ``basis(d1)[i] * basis(d2)[j]``."""
        key = (d1, d2) if d1 <= d2 else (d2, d1)
        t = self._table_cache.get(key)
        if t is None:
            self.check_degree(d1 + d2)
            b1, b2 = self.basis(key[0]), self.basis(key[1])
            t = [[self.mul_basis(x, y).coords for y in b2] for x in b1]
            self._table_cache[key] = t
        if key == (d1, d2):
            return t
        return [list(col) for col in zip(*t)] if t else [[] for _ in self.basis(d1)]

    def _row(self, d1: int, i: int, d2: int) -> list[int]:
        key = (d1, d2) if d1 <= d2 else (d2, d1)
        t = self.table(*key)
        if key == (d1, d2):
            return t[i]
        return [row[i] for row in t]

    def mul_map(self, a: Element, e: int) -> list[int]:
        """Images of ``basis(e)`` under multiplication by ``a`` (in degree e+|a|)."""
        n = self.dim(e)
        if n == 0 or a.degree + e < self.degree_floor:
            return [0] * n
        self.check_degree(a.degree + e)
        out = [0] * n
        for i in gf2.bits(a.coords):
            row = self._row(a.degree, i, e)
            for j in range(n):
                out[j] ^= row[j]
        return out

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} dmax={self.dmax}>"


def mul(a: Element, b: Element) -> Element:
    eng = a.engine
    if b.engine is not eng:
        raise ValueError("elements of different rings")
    d = a.degree + b.degree
    eng.check_degree(d)
    if not a.coords or not b.coords or d < eng.degree_floor:
        return eng.zero(d)
    if a.degree == b.degree or a.degree < b.degree:
        t = eng.table(a.degree, b.degree)
        x, y = a, b
    else:
        t = eng.table(b.degree, a.degree)
        x, y = b, a
    out = 0
    ybits = list(gf2.bits(y.coords))
    for i in gf2.bits(x.coords):
        row = t[i]
        for j in ybits:
            out ^= row[j]
    return Element(eng, d, out)


def hilbert(engine: RingEngine, dmax: int | None = None) -> list[int]:
    top = engine.dmax if dmax is None else dmax
    return [engine.dim(d) for d in range(top + 1)]


# -- subspaces -------------------------------------------------------------


class Subspace:
    """Row-reduced subspace of one graded piece."""

    __slots__ = ("degree", "rows", "ambient")

    def __init__(self, degree: int, rows: Iterable[int], ambient: int, reduced: bool = False):
        self.degree = degree
        self.ambient = ambient
        self.rows = tuple(rows) if reduced else tuple(gf2.rref(rows, ambient))

    @classmethod
    def full(cls, degree: int, ambient: int) -> "Subspace":
        return cls(degree, [1 << i for i in range(ambient)], ambient, reduced=True)

    @classmethod
    def zero(cls, degree: int, ambient: int) -> "Subspace":
        return cls(degree, (), ambient, reduced=True)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return [(r & -r).bit_length() - 1 for r in self.rows]

    def reduce(self, v: int) -> int:
        return gf2.reduce(v, self.rows)

    def contains(self, v: int) -> bool:
        return gf2.reduce(v, self.rows) == 0

    def __contains__(self, v):
        if isinstance(v, Element):
            v = v.coords
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace(self.degree, self.rows + other.rows, self.ambient)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._compat(other)
        return Subspace(
            self.degree, gf2.intersect(self.rows, other.rows, self.ambient), self.ambient, reduced=True
        )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.degree == other.degree and self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.degree, self.ambient, self.rows))

    def _compat(self, other: "Subspace") -> None:
        if self.degree != other.degree or self.ambient != other.ambient:
            raise ValueError("subspaces of different graded pieces")

    def complement_witness(self, other: "Subspace") -> int | None:
        """A row of ``self`` not in ``other``, or ``None``."""
        for r in self.rows:
            if not other.contains(r):
                return r
        return None

    def __repr__(self):
        return f"Subspace(degree={self.degree}, rank={self.rank}/{self.ambient})"


def kernel(columns: Sequence[int], nrows: int, degree: int = 0) -> Subspace:
    """Kernel of the map whose j-th column is ``columns[j]`` (an ``nrows``-bit vector)."""
    return Subspace(degree, gf2.kernel(columns, nrows), len(columns), reduced=True)


def solve(columns: Sequence[int], target: int, nrows: int) -> int | None:
    return gf2.solve(columns, target, nrows)


def image(columns: Sequence[int], nrows: int, degree: int = 0) -> Subspace:
    return Subspace(degree, columns, nrows)


# -- free and quotient engines --------------------------------------------


class PolynomialEngine(RingEngine):
    """Free graded commutative polynomial ring over GF(2).

    Labels are exponent tuples aligned with ``gens``; the basis of each
    degree is sorted lexicographically on the tuples.
    """

    def __init__(self, gens: Sequence[tuple[str, int]], dmax: int):
        super().__init__(dmax)
        for name, deg in gens:
            if deg <= 0:
                raise ValueError(f"generator {name} must have positive degree")
        self.gens = tuple((str(n), int(d)) for n, d in gens)
        self.name = "f2[" + ",".join(f"{n}:{d}" for n, d in self.gens) + "]"
        self._names = {n: i for i, (n, _) in enumerate(self.gens)}
        if len(self._names) != len(self.gens):
            raise ValueError("generator names must be distinct")

    def _basis(self, d):
        degs = [g for _, g in self.gens]
        out = []

        def rec(i, rem, acc):
            if i == len(degs):
                if rem == 0:
                    out.append(tuple(acc))
                return
            for e in range(rem // degs[i] + 1):
                acc.append(e)
                rec(i + 1, rem - e * degs[i], acc)
                acc.pop()

        rec(0, d, [])
        return sorted(out)

    def label_degree(self, label):
        return sum(e * g for e, (_, g) in zip(label, self.gens))

    def _mono_mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def generators(self):
        out = []
        for i, (_, g) in enumerate(self.gens):
            if g <= self.dmax:
                lab = tuple(1 if j == i else 0 for j in range(len(self.gens)))
                out.append((lab, g))
        return out

    def gen(self, name: str) -> Element:
        i = self._names[name]
        return self.monomial(tuple(1 if j == i else 0 for j in range(len(self.gens))))

    def format_label(self, label):
        parts = []
        for e, (n, _) in zip(label, self.gens):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) or "1"


class QuotientEngine(RingEngine):
    """``base / (relators)`` computed degreewise.

    The quotient basis in degree d is the set of base labels at the non-pivot
    columns of the echelon form of the relator multiples.
    """

    def __init__(self, base: RingEngine, relators: Sequence[Element], dmax: int | None = None):
        dmax = base.dmax if dmax is None else min(dmax, base.dmax)
        super().__init__(dmax)
        for w in relators:
            if w.engine is not base:
                raise ValueError("relators must live in the base engine")
            if w.degree <= 0:
                raise ValueError("relators must have positive degree")
        self.base = base
        self.relators = tuple(w for w in relators if w.coords)
        self.name = base.name + "/(" + ", ".join(str(w) for w in self.relators) + ")"
        self._rel_cache: dict[int, Subspace] = {}
        self._cols: dict[int, tuple[int, ...]] = {}

    def relator_span(self, d: int) -> Subspace:
        s = self._rel_cache.get(d)
        if s is None:
            self.check_degree(d)
            n = self.base.dim(d)
            rows = []
            for w in self.relators:
                e = d - w.degree
                if e < self.base.degree_floor:
                    continue
                rows.extend(self.base.mul_map(w, e))
            s = Subspace(d, rows, n)
            self._rel_cache[d] = s
        return s

    def _columns(self, d: int) -> tuple[int, ...]:
        c = self._cols.get(d)
        if c is None:
            span = self.relator_span(d)
            piv = set(span.pivots())
            c = tuple(i for i in range(self.base.dim(d)) if i not in piv)
            self._cols[d] = c
        return c

    def _basis(self, d):
        bb = self.base.basis(d)
        return [bb[i] for i in self._columns(d)]

    def label_degree(self, label):
        return self.base.label_degree(label)

    def project(self, v: Element) -> Element:
        """Image of a base element in the quotient."""
        d = v.degree
        r = self.relator_span(d).reduce(v.coords)
        out = 0
        for k, i in enumerate(self._columns(d)):
            if r >> i & 1:
                out |= 1 << k
        return Element(self, d, out)

    def lift(self, a: Element) -> Element:
        cols = self._columns(a.degree)
        c = 0
        for k in gf2.bits(a.coords):
            c |= 1 << cols[k]
        return Element(self.base, a.degree, c)

    def mul_basis(self, a, b):
        return self.project(self.base.mul_basis(a, b))

    def generators(self):
        out = []
        for lab, g in self.base.generators():
            if g <= self.dmax and self.project(self.base.monomial(lab)).coords:
                out.append((lab, g))
        return out

    def format_label(self, label):
        return self.base.format_label(label)


def quotient_engine(base: RingEngine, relators: Sequence[Element], dmax: int | None = None) -> RingEngine:
    return QuotientEngine(base, relators, dmax)


def elements_of_degree(engine: RingEngine, d: int, nonzero: bool = True):
    """Iterate every element of degree d (exponential; for brute-force checks)."""
    n = engine.dim(d)
    for c in range(1 if nonzero else 0, 1 << n):
        yield Element(engine, d, c)


def vector_mul(b: Sequence[Element], u: Sequence[Element]) -> Element:
    """``sum_i b_i u_i``; all products must land in one degree."""
    if not b:
        raise ValueError("empty vectors have no degree")
    out = b[0] * u[0]
    for x, y in zip(b[1:], u[1:]):
        out = out + x * y
    return out


def product_space(engine: RingEngine, degrees: Sequence[int]):
    """Offsets and total width for stacking graded pieces side by side."""
    offs, tot = [], 0
    for d in degrees:
        offs.append(tot)
        tot += engine.dim(d) if d >= engine.degree_floor else 0
    return offs, tot


__all__ = [
    "BoundError",
    "Element",
    "RingEngine",
    "Subspace",
    "PolynomialEngine",
    "QuotientEngine",
    "mul",
    "hilbert",
    "kernel",
    "solve",
    "image",
    "quotient_engine",
    "elements_of_degree",
    "vector_mul",
    "product_space",
]
