"""The root algebra on finite rational supports.

Elements are finite sums of c * x^q with q rational in [0, 1] and c in a
prime field.  Products add exponents and drop anything beyond 1, since
x^q = 0 for q > 1.  Ideals are all of the form J_t = {a : delta(a) > t} or
the principal ideal (x^t), so they are handled symbolically.

Only the witness construction and the ideal calculus are checked here; no
claim is made that the finite-support ring is itself self-injective.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

INF = math.inf

ONE_Q = Fraction(1)
ZERO_Q = Fraction(0)


def _q(x) -> Fraction:
    q = Fraction(x)
    if q < 0 or q > 1:
        raise ValueError(f"exponent {q} outside [0, 1]")
    return q


class RootSeries:
    """Immutable finite series; ``coeffs`` maps exponent to a nonzero residue mod p."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Mapping | Iterable = (), p: int = 2):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[Fraction, int] = {}
        for q, c in items:
            q = Fraction(q)
            if q < 0:
                raise ValueError(f"negative exponent {q}")
            if q > 1:
                continue
            acc[q] = (acc.get(q, 0) + int(c)) % p
        self.coeffs = {q: c for q, c in sorted(acc.items()) if c}
        self.p = p

    @classmethod
    def x(cls, q, p: int = 2, c: int = 1) -> "RootSeries":
        return cls({_q(q): c}, p)

    @classmethod
    def const(cls, c: int = 1, p: int = 2) -> "RootSeries":
        return cls({ZERO_Q: c}, p)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[Fraction]:
        return list(self.coeffs)

    def __call__(self, q) -> int:
        return self.coeffs.get(Fraction(q), 0)

    def _check(self, other: "RootSeries"):
        if self.p != other.p:
            raise ValueError("series over different fields")

    def __add__(self, other: "RootSeries") -> "RootSeries":
        self._check(other)
        return RootSeries(list(self.coeffs.items()) + list(other.coeffs.items()), self.p)

    def __neg__(self) -> "RootSeries":
        return RootSeries({q: -c for q, c in self.coeffs.items()}, self.p)

    def __sub__(self, other: "RootSeries") -> "RootSeries":
        return self + (-other)

    def __mul__(self, other) -> "RootSeries":
        if isinstance(other, int):
            return RootSeries({q: c * other for q, c in self.coeffs.items()}, self.p)
        return root_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RootSeries":
        out = RootSeries.const(1, self.p)
        for _ in range(n):
            out = out * self
            if out.is_zero():
                break
        return out

    def __eq__(self, other):
        return isinstance(other, RootSeries) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, tuple(self.coeffs.items())))

    def __repr__(self):
        return f"RootSeries({format_series(self)!r}, p={self.p})"

    def __str__(self):
        return format_series(self)


def root_mul(a: RootSeries, b: RootSeries) -> RootSeries:
    a._check(b)
    out: dict[Fraction, int] = {}
    for q, c in a.coeffs.items():
        for r, e in b.coeffs.items():
            s = q + r
            if s <= 1:
                out[s] = out.get(s, 0) + c * e
    return RootSeries(out, a.p)


def root_delta(a: RootSeries) -> Fraction | float:
    return next(iter(a.coeffs)) if a.coeffs else INF


def lambda_t(a: RootSeries, t) -> RootSeries:
    """Shift down by t: lambda_t(a)(r) = a(r + t)."""
    t = _q(t)
    if root_delta(a) < t:
        raise ValueError(f"lambda_{t} needs delta(a) >= {t}, got {root_delta(a)}")
    return RootSeries({q - t: c for q, c in a.coeffs.items()}, a.p)


def root_inverse(a: RootSeries) -> RootSeries:
    """Inverse of a series with delta(a) = 0, via u^{-1} sum (-b/u)^i."""
    if root_delta(a) != 0:
        raise ValueError("only series with delta = 0 are invertible")
    p = a.p
    u = a(0)
    uinv = pow(u, -1, p)
    b = a - RootSeries.const(u, p)
    step = b * (-uinv % p)
    out = RootSeries.const(0, p)
    term = RootSeries.const(1, p)
    while not term.is_zero():
        out = out + term
        term = term * step
    out = out * uinv
    if root_mul(out, a) != RootSeries.const(1, p):
        raise AssertionError("inverse failed verification")
    return out


def root_nilpotency_index(a: RootSeries) -> int:
    """Smallest n with a^n = 0; needs delta(a) > 0."""
    d = root_delta(a)
    if d == INF:
        return 1
    if d == 0:
        raise ValueError("series with delta = 0 are units, not nilpotent")
    bound = math.floor(1 / d) + 1
    power = a
    n = 1
    while not power.is_zero():
        power = power * a
        n += 1
        if n > bound + 1:
            raise AssertionError("nilpotency bound exceeded")
    return n


def is_unit(a: RootSeries) -> bool:
    return root_delta(a) == 0


def reduction(a: RootSeries) -> int:
    """a |-> a(0); its kernel is the nilradical."""
    return a(0)


# -- ideals -------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolicIdeal:
    """J_t when ``closed`` is false, (x^t) when true.  J_1 is the zero ideal."""

    t: Fraction
    closed: bool

    def __post_init__(self):
        object.__setattr__(self, "t", _q(self.t))

    @property
    def is_zero(self) -> bool:
        return not self.closed and self.t == 1

    def contains(self, a: RootSeries) -> bool:
        d = root_delta(a)
        return d >= self.t if self.closed else d > self.t

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"Jbar_{self.t}" if self.closed else f"J_{self.t}"

    def as_record(self) -> dict:
        return {"t": str(self.t), "closed": self.closed, "zero": self.is_zero, "name": str(self)}


ZERO_IDEAL = SymbolicIdeal(ONE_Q, False)


def classify_ideal(gens: Iterable[RootSeries]) -> SymbolicIdeal:
    """A finitely generated ideal is (x^t) with t the least delta."""
    ds = [root_delta(a) for a in gens if not a.is_zero()]
    if not ds:
        return ZERO_IDEAL
    return SymbolicIdeal(min(ds), True)


def symbolic_ann(ideal: SymbolicIdeal) -> SymbolicIdeal:
    """ann(J_t) = (x^{1-t}) and ann((x^t)) = J_{1-t}."""
    return SymbolicIdeal(1 - ideal.t, not ideal.closed)


def baer_witness(t, a: RootSeries) -> RootSeries:
    """Multiplier extending the map x^t |-> a from (x^t) to the whole ring."""
    t = _q(t)
    if root_delta(a) < t:
        raise ValueError(f"x^{t} |-> {a} is not a module map: delta(a) < t")
    w = lambda_t(a, t)
    if root_mul(RootSeries.x(t, a.p), w) != a:
        raise AssertionError("witness failed verification")
    return w


# -- text form ----------------------------------------------------------------


def _fmt_q(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def format_series(a: RootSeries) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for q, c in a.coeffs.items():
        if q == 0:
            mono = "1"
        elif q == 1:
            mono = "x"
        else:
            mono = f"x^{_fmt_q(q)}"
        if c == 1:
            parts.append(mono)
        elif q == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


_TERM = re.compile(
    r"^(?:(\d+)\s*\*?\s*)?(?:x(?:\^\(?\s*(\d+)\s*(?:/\s*(\d+))?\s*\)?)?)?$"
)


def parse_series(text: str, p: int = 2) -> RootSeries:
    """Sums of ``c*x^(n/d)`` terms, e.g. ``1 + x^(1/2) + 2*x``."""
    text = text.strip()
    if text == "0":
        return RootSeries({}, p)
    terms = []
    for raw in text.split("+"):
        t = raw.strip()
        m = _TERM.match(t)
        if not t or not m or (m.group(1) is None and "x" not in t):
            raise ValueError(f"bad series term {raw!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if "x" not in t:
            q = ZERO_Q
        elif m.group(2) is None:
            q = ONE_Q
        else:
            q = Fraction(int(m.group(2)), int(m.group(3) or 1))
        terms.append((_q(q), c))
    return RootSeries(terms, p)
