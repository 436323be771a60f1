"""The graded ring Z_p (x) J, truncated at p^M.

Degree 0 is Z_p (stored mod p^M), degree -2 is Q_p/Z_p (stored as a
fraction with denominator dividing p^M), and degree 2(p-1)k - 1 is cyclic
of order p^(v_p(k)+1) generated by alpha_k.  Everything else is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class TruncationError(ValueError):
    """The truncation level M is too small for the requested value."""


def vp(k: int, p: int) -> int:
    if k == 0:
        raise ValueError("v_p(0) is undefined")
    k = abs(k)
    e = 0
    while k % p == 0:
        k //= p
        e += 1
    return e


def _check_prime(p: int) -> None:
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")


def alpha_index(d: int, p: int) -> int | None:
    """The k with 2(p-1)k - 1 = d, if any."""
    q, r = divmod(d + 1, 2 * (p - 1))
    if r or q == 0:
        return None
    return q


@dataclass(frozen=True)
class JDegreeGroup:
    kind: str  # "Zp", "QpZp", "cyclic", "zero"
    degree: int
    p: int
    M: int
    k: int | None = None

    @property
    def order(self) -> int:
        """Order at truncation level M."""
        if self.kind in ("Zp", "QpZp"):
            return self.p**self.M
        if self.kind == "cyclic":
            return self.p ** (vp(self.k, self.p) + 1)
        return 1

    def __str__(self):
        if self.kind == "Zp":
            return f"ZpTrunc({self.M})"
        if self.kind == "QpZp":
            return f"QpModZpTrunc({self.M})"
        if self.kind == "cyclic":
            return f"Cyclic({self.order})"
        return "Zero"

    def as_record(self) -> dict:
        rec = {"degree": self.degree, "group": str(self), "order": self.order, "p": self.p, "M": self.M}
        if self.k is not None:
            rec["alpha"] = self.k
        return rec


def j_degree_group(d: int, p: int, M: int) -> JDegreeGroup:
    _check_prime(p)
    if M < 1:
        raise ValueError("truncation level M must be positive")
    if d == 0:
        return JDegreeGroup("Zp", d, p, M)
    if d == -2:
        return JDegreeGroup("QpZp", d, p, M)
    k = alpha_index(d, p)
    if k is not None:
        return JDegreeGroup("cyclic", d, p, M, k)
    return JDegreeGroup("zero", d, p, M)


@dataclass(frozen=True)
class JElem:
    """A homogeneous element; ``value`` is an int, or a Fraction in degree -2."""

    degree: int
    value: int | Fraction
    p: int
    M: int

    def __post_init__(self):
        g = self.group
        if g.kind == "QpZp":
            v = Fraction(self.value) % 1
            if (self.p**self.M) % v.denominator:
                raise TruncationError(f"{v} is not representable with M={self.M}")
        elif g.kind == "zero":
            v = 0
        else:
            v = int(self.value) % g.order
        object.__setattr__(self, "value", v)

    @property
    def group(self) -> JDegreeGroup:
        return j_degree_group(self.degree, self.p, self.M)

    def is_zero(self) -> bool:
        return self.value == 0

    def __mul__(self, other: "JElem") -> "JElem":
        return j_mul(self, other)

    def __add__(self, other: "JElem") -> "JElem":
        if (self.degree, self.p, self.M) != (other.degree, other.p, other.M):
            raise ValueError("cannot add elements of different degrees or truncations")
        return JElem(self.degree, self.value + other.value, self.p, self.M)

    def __str__(self):
        g = self.group
        if g.kind == "Zp":
            return f"eta({self.value})"
        if g.kind == "QpZp":
            return f"zeta^-1({self.value})"
        if g.kind == "cyclic":
            return f"{self.value}*alpha[{g.k}]"
        return f"0@{self.degree}"


def eta(a: int, p: int, M: int) -> JElem:
    return JElem(0, a, p, M)


def zeta_inv(a, p: int, M: int) -> JElem:
    return JElem(-2, Fraction(a), p, M)


def alpha(k: int, p: int, M: int, c: int = 1) -> JElem:
    if k == 0:
        raise ValueError("alpha_0 does not exist")
    return JElem(2 * (p - 1) * k - 1, c, p, M)


def j_zero(d: int, p: int, M: int) -> JElem:
    return JElem(d, 0, p, M)


def j_mul(a: JElem, b: JElem) -> JElem:
    if (a.p, a.M) != (b.p, b.M):
        raise ValueError("elements at different primes or truncations")
    p, M = a.p, a.M
    d = a.degree + b.degree
    ga, gb = a.group, b.group
    if ga.kind == "zero" or gb.kind == "zero":
        return j_zero(d, p, M)
    # put a degree-0 factor first; degree-0 elements are central
    if gb.kind == "Zp" and ga.kind != "Zp":
        a, b, ga, gb = b, a, gb, ga
    if ga.kind == "Zp":
        if gb.kind == "Zp":
            return JElem(0, a.value * b.value, p, M)
        if gb.kind == "QpZp":
            return JElem(-2, a.value * b.value, p, M)
        return JElem(b.degree, a.value * b.value, p, M)
    if ga.kind == "QpZp" or gb.kind == "QpZp":
        return j_zero(d, p, M)
    j, k = ga.k, gb.k
    if j + k != 0:
        return j_zero(d, p, M)
    v = vp(j, p)
    if v + 1 > M:
        raise TruncationError(f"p^(-1-{v}) needs M >= {v + 1}, got M={M}")
    sign = 1 if j > 0 else -1
    return JElem(-2, Fraction(sign * a.value * b.value, p ** (v + 1)), p, M)


def additive_order(x: JElem) -> int:
    if x.group.kind == "QpZp":
        return Fraction(x.value).denominator
    n = x.group.order
    return n // gcd(n, int(x.value))


def generator(g: JDegreeGroup) -> JElem:
    if g.kind == "Zp":
        return eta(1, g.p, g.M)
    if g.kind == "QpZp":
        return zeta_inv(Fraction(1, g.p**g.M), g.p, g.M)
    if g.kind == "cyclic":
        return alpha(g.k, g.p, g.M)
    return j_zero(g.degree, g.p, g.M)


@dataclass
class DualityReport:
    k: int
    p: int
    M: int
    left: str
    right: str
    orders: tuple[int, int]
    pairing: str
    pairing_order: int
    passed: bool
    note: str = ""

    def as_record(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "M": self.M,
            "left": self.left,
            "right": self.right,
            "orders": list(self.orders),
            "pairing": self.pairing,
            "pairing_order": self.pairing_order,
            "passed": self.passed,
            "note": self.note,
        }


def pontrjagin_check(k: int, p: int, M: int, brute: int = 4096) -> DualityReport:
    """Pair degree -2-k against degree k through multiplication into degree -2.

    Both groups are cyclic, so the pairing is perfect iff the two orders
    agree and the generators pair to an element of that full order.  For
    groups with at most ``brute`` elements every nonzero left element is also
    checked against the right generator.
    """
    gl = j_degree_group(-2 - k, p, M)
    gr = j_degree_group(k, p, M)
    note = ""
    if {gl.kind, gr.kind} == {"Zp", "QpZp"}:
        note = "truncated: Z/p^M against p^-M Z/Z"
    if gl.kind == "zero" and gr.kind == "zero":
        return DualityReport(k, p, M, str(gl), str(gr), (1, 1), "0", 1, True, "both groups zero")
    if (gl.kind == "zero") != (gr.kind == "zero"):
        return DualityReport(k, p, M, str(gl), str(gr), (gl.order, gr.order), "0", 1, False)
    if gl.kind == "cyclic" and vp(gl.k, p) + 1 > M:
        raise TruncationError(f"pairing alpha[{gl.k}] needs M >= {vp(gl.k, p) + 1}")
    a, b = generator(gl), generator(gr)
    val = j_mul(a, b)
    order = additive_order(val)
    ok = gl.order == gr.order == order
    if ok and gl.order <= brute:
        for c in range(1, gl.order):
            x = JElem(a.degree, a.value * c, p, M)
            if j_mul(x, b).is_zero():
                ok = False
                break
    return DualityReport(k, p, M, str(gl), str(gr), (gl.order, gr.order), str(val), order, ok, note)


def annihilation_exceptions(x: JElem, K: int) -> list[int]:
    """Indices k, 0 < |k| <= K and p not dividing k, with x * alpha_k != 0."""
    out = []
    for k in range(-K, K + 1):
        if k == 0 or k % x.p == 0:
            continue
        if not j_mul(x, alpha(k, x.p, x.M)).is_zero():
            out.append(k)
    return out


def is_unit(x: JElem) -> bool:
    return x.degree == 0 and x.value % x.p != 0
