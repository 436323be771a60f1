"""The epsilon_0 algebra A = F2[x_a : a < eps_0] / (x_i x_j^(mu(i,j)+1)), |x_a| = delta(a).

A monomial is a tuple of (ordinal, exponent) pairs sorted by ordinal.  It is
a basis monomial iff for distinct i, j in its support both exponents are at
most mu(i, j).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from ..engine import RingEngine
from ..ordinals import Ordinal, delta, enumerate_delta_le, extension_witness, format_ordinal, mu

Mono = tuple[tuple[Ordinal, int], ...]


def as_mono(gamma: Mapping[Ordinal, int]) -> Mono:
    return tuple(sorted((k, e) for k, e in gamma.items() if e > 0))


def in_MA(gamma: Mapping[Ordinal, int] | Mono) -> bool:
    items = list(gamma.items()) if isinstance(gamma, Mapping) else list(gamma)
    items = [(k, e) for k, e in items if e > 0]
    for s, (i, ei) in enumerate(items):
        for j, ej in items[s + 1:]:
            if max(ei, ej) > mu(i, j):
                return False
    return True


def mono_degree(gamma: Mono) -> int:
    return sum(delta(k) * e for k, e in gamma)


def mono_sum(a: Mono, b: Mono) -> Mono:
    out = dict(a)
    for k, e in b:
        out[k] = out.get(k, 0) + e
    return as_mono(out)


def epsilon_mul(a: Mono, b: Mono) -> Mono | None:
    c = mono_sum(a, b)
    return c if in_MA(c) else None


def divides(a: Mono, b: Mono) -> bool:
    eb = dict(b)
    return all(eb.get(k, 0) >= e for k, e in a)


def format_mono(gamma: Mono) -> str:
    parts = []
    for k, e in gamma:
        s = f"x[{format_ordinal(k)}]"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts) or "1"


class Epsilon(RingEngine):
    name = "epsilon"

    def __init__(self, dmax: int):
        super().__init__(dmax)
        self._gens = sorted(enumerate_delta_le(dmax), key=lambda a: (delta(a), a))

    def _basis(self, d):
        gens = [g for g in self._gens if delta(g) <= d]
        out: list[Mono] = []
        chosen: list[tuple[Ordinal, int]] = []

        def rec(start, rem):
            if rem == 0:
                out.append(as_mono(dict(chosen)))
                return
            for idx in range(start, len(gens)):
                g = gens[idx]
                dg = delta(g)
                if dg > rem:
                    break
                bound = rem // dg
                for k, ek in chosen:
                    m = mu(k, g)
                    if ek > m:
                        bound = 0
                        break
                    bound = min(bound, m)
                for e in range(1, bound + 1):
                    chosen.append((g, e))
                    rec(idx + 1, rem - e * dg)
                    chosen.pop()

        rec(0, d)
        return sorted(set(out))

    def label_degree(self, label):
        return mono_degree(label)

    def _mono_mul(self, a, b):
        return epsilon_mul(a, b)

    def generators(self):
        return [(((g, 1),), delta(g)) for g in sorted(self._gens)]

    def x(self, a: Ordinal, power: int = 1):
        return self.monomial(((a, power),))

    def format_label(self, label):
        return format_mono(label)


def epsilon_basis(d: int) -> list[Mono]:
    return list(Epsilon(d).basis(d))


def epsilon_witness(gens: Sequence[Mono], target: Mono) -> list[Ordinal] | None:
    """Fresh indices k_t with prod x_{k_t} killing every generator but not x^target.

    Returns ``None`` when some generator divides the target.
    """
    if any(divides(a, target) for a in gens):
        return None
    support = {k for k, _ in target}
    for a in gens:
        support |= {k for k, _ in a}
    beta = dict(target)
    big_n = max(beta.values(), default=0)
    ks: list[Ordinal] = []
    for a in gens:
        ea = dict(a)
        i_t = min(k for k in ea if ea[k] > beta.get(k, 0))
        nu = {j: big_n for j in support}
        nu[i_t] = ea[i_t] - 1
        for k in ks:
            nu[k] = 1
        ks.append(extension_witness(sorted(nu, reverse=True), nu))
    return ks


def check_epsilon_witness(gens: Sequence[Mono], target: Mono, ks: Sequence[Ordinal]) -> bool:
    """Label-level check: y = prod x_k is nonzero, y*x^target != 0, y*x^a = 0."""
    if len(set(ks)) != len(ks):
        return False
    y = as_mono({k: 1 for k in ks})
    if not in_MA(y) or not in_MA(target):
        return False
    if not in_MA(mono_sum(y, target)):
        return False
    return all(not in_MA(mono_sum(y, a)) for a in gens)
