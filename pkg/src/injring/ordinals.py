"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is an immutable tuple of ``(exponent, coefficient)``
terms with strictly decreasing exponents.  Besides comparison and addition
this module provides the degree function ``delta``, the reverse-polish word
codec ``phi_word``/``decode_phi``, the coefficient pairing ``mu`` and the
extension witness used by the epsilon algebra.

Text syntax: ``0``, ``w``, ``w^2``, ``w^(w+1)*3``, ``w^2+w*3+1``.
"""

from __future__ import annotations

import re
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "ord_cmp",
    "ord_add",
    "omega_pow",
    "delta",
    "phi_word",
    "decode_phi",
    "mu0",
    "mu",
    "extension_witness",
    "ordinals_with_delta",
    "enumerate_delta_le",
    "parse_ordinal",
]

PI = "π"


@total_ordering
class Ordinal:
    """Ordinal < epsilon_0, kept in canonical Cantor normal form."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal):
                raise TypeError("exponents must be Ordinal instances")
            if not isinstance(c, int) or c < 1:
                raise ValueError("coefficients must be positive integers")
            if i and not e < terms[i - 1][0]:
                raise ValueError("exponents must be strictly decreasing")
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO, n),)) if n else ZERO

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def leading_exponent(self) -> "Ordinal | None":
        return self.terms[0][0] if self.terms else None

    # -- comparison -------------------------------------------------------
    def _cmp(self, other: "Ordinal") -> int:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 is not e2:
                c = e1._cmp(e2)
                if c:
                    return c
            if c1 != c2:
                return -1 if c1 < c2 else 1
        n1, n2 = len(self.terms), len(other.terms)
        return (n1 > n2) - (n1 < n2)

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._hash == other._hash and self.terms == other.terms

    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return self._hash

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return ord_add(self, other)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self):
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def ord_cmp(a: Ordinal, b: Ordinal) -> str:
    """Return ``"lt"``, ``"eq"`` or ``"gt"``."""
    c = a._cmp(b)
    return "lt" if c < 0 else ("gt" if c > 0 else "eq")


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = []
    for e, c in a.terms:
        cmp = e._cmp(lead)
        if cmp > 0:
            kept.append((e, c))
        elif cmp == 0:
            kept.append((e, c + b.terms[0][1]))
            return Ordinal(kept + list(b.terms[1:]))
        else:
            break
    return Ordinal(kept + list(b.terms))


def omega_pow(a: Ordinal) -> Ordinal:
    return Ordinal(((a, 1),))


def _times(a: Ordinal, n: int) -> Ordinal:
    out = ZERO
    for _ in range(n):
        out = ord_add(out, a)
    return out


@lru_cache(maxsize=None)
def delta(a: Ordinal) -> int:
    if a.is_zero():
        return 1
    return sum((delta(e) + 2) * c for e, c in a.terms) - 1


def _expanded(a: Ordinal) -> list[Ordinal]:
    return [e for e, c in a.terms for _ in range(c)]


@lru_cache(maxsize=None)
def phi_word(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = _expanded(a)
    return "".join(phi_word(e) + PI for e in parts) + "+" * (len(parts) - 1)


def decode_phi(word: str) -> Ordinal:
    """Evaluate a reverse-polish word over ``{0, π, +}``."""
    stack: list[Ordinal] = []
    for ch in word:
        if ch == "0":
            stack.append(ZERO)
        elif ch in (PI, "p"):
            if not stack:
                raise ValueError(f"malformed word {word!r}")
            stack.append(omega_pow(stack.pop()))
        elif ch == "+":
            if len(stack) < 2:
                raise ValueError(f"malformed word {word!r}")
            b = stack.pop()
            stack.append(ord_add(stack.pop(), b))
        else:
            raise ValueError(f"bad symbol {ch!r} in {word!r}")
    if len(stack) != 1:
        raise ValueError(f"malformed word {word!r}")
    return stack[0]


def mu0(a: Ordinal, b: Ordinal) -> int:
    """Coefficient of omega^b in the normal form of a."""
    for e, c in a.terms:
        if e == b:
            return c
    return 0


def mu(a: Ordinal, b: Ordinal) -> int:
    if a == b:
        raise ValueError("mu is undefined on the diagonal")
    return _mu_cached(a, b) if a < b else _mu_cached(b, a)


@lru_cache(maxsize=1 << 20)
def _mu_cached(a: Ordinal, b: Ordinal) -> int:
    return max(mu0(a, b), mu0(b, a))


def extension_witness(J: Sequence[Ordinal], nu: Mapping[Ordinal, int]) -> Ordinal:
    """An ordinal outside ``J`` whose mu-value against each member of J is prescribed.

    ``J`` must be strictly descending.  For empty J this returns omega.
    """
    J = list(J)
    for x, y in zip(J, J[1:]):
        if not y < x:
            raise ValueError("J must be sorted strictly descending")
    if not J:
        return OMEGA
    terms = [(ord_add(J[0], ONE), 1)]
    terms += [(b, nu[b]) for b in J if nu.get(b, 0) > 0]
    return Ordinal(terms)


@lru_cache(maxsize=None)
def _fiber(d: int) -> tuple[Ordinal, ...]:
    if d < 1:
        return ()
    if d == 1:
        return (ZERO,)
    # expanded CNF: non-increasing exponents, each costing delta+2, total d+1
    cands = sorted(
        (b for k in range(1, d) for b in _fiber(k)), reverse=True
    )
    cost = [delta(b) + 2 for b in cands]
    out: list[Ordinal] = []

    def rec(start: int, budget: int, chosen: list[int]) -> None:
        if budget == 0:
            terms: list[tuple[Ordinal, int]] = []
            for i in chosen:
                if terms and terms[-1][0] is cands[i]:
                    terms[-1] = (cands[i], terms[-1][1] + 1)
                else:
                    terms.append((cands[i], 1))
            out.append(Ordinal(terms))
            return
        for i in range(start, len(cands)):
            if cost[i] <= budget:
                chosen.append(i)
                rec(i, budget - cost[i], chosen)
                chosen.pop()

    rec(0, d + 1, [])
    return tuple(sorted(out))


def ordinals_with_delta(d: int) -> tuple[Ordinal, ...]:
    """All ordinals with delta exactly d, ascending."""
    return _fiber(d)


def enumerate_delta_le(d: int) -> set[Ordinal]:
    return {a for k in range(1, d + 1) for a in _fiber(k)}


# -- text syntax ----------------------------------------------------------

def format_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite():
            base = f"w^{e.as_int()}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


_TOKEN = re.compile(r"\s*(\d+|w|\^|\*|\+|\(|\))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse ordinal at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_ordinal(text: str) -> Ordinal:
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"cannot parse ordinal {text!r}")
        pos += 1
        return tok

    def expr() -> Ordinal:
        out = term()
        while peek() == "+":
            take()
            out = ord_add(out, term())
        return out

    def term() -> Ordinal:
        a = atom()
        if peek() == "*":
            take()
            tok = take()
            if not tok.isdigit():
                raise ValueError(f"multiplier must be a natural number in {text!r}")
            a = _times(a, int(tok))
        return a

    def atom() -> Ordinal:
        tok = take()
        if tok.isdigit():
            return Ordinal.from_int(int(tok))
        if tok == "(":
            a = expr()
            take(")")
            return a
        if tok == "w":
            if peek() != "^":
                return OMEGA
            take()
            return omega_pow(power())
        raise ValueError(f"cannot parse ordinal {text!r}")

    def power() -> Ordinal:
        tok = take()
        if tok.isdigit():
            return Ordinal.from_int(int(tok))
        if tok == "w":
            return OMEGA
        if tok == "(":
            a = expr()
            take(")")
            return a
        raise ValueError(f"cannot parse ordinal {text!r}")

    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result


def iter_words(max_len: int, alphabet: str = "0" + PI + "+") -> Iterator[str]:
    """All words up to the given length (test oracle helper)."""
    from itertools import product

    for n in range(1, max_len + 1):
        for w in product(alphabet, repeat=n):
            yield "".join(w)
