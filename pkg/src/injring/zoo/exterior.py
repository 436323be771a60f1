"""Exterior algebra E on x_0, x_1, ... with |x_i| = 2^i, and its truncations E(n).

A monomial x_I is stored as the bitmask of I, which is also its degree, so
each degree carries at most one basis element.
"""

from __future__ import annotations

from ..engine import RingEngine


def set_of(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        if i < 0:
            raise ValueError("indices are natural numbers")
        if m >> i & 1:
            raise ValueError(f"repeated index {i}")
        m |= 1 << i
    return m


def format_set(mask: int) -> str:
    return "x{" + ",".join(map(str, set_of(mask))) + "}" if mask else "1"


def exterior_mul(a: int, b: int) -> int | None:
    """Product of x_A and x_B as a mask, or ``None`` when A and B meet."""
    return None if a & b else a | b


class Exterior(RingEngine):
    """E when ``n`` is None, otherwise E(n) on x_0..x_{n-1}."""

    def __init__(self, dmax: int, n: int | None = None):
        if n is not None and n < 0:
            raise ValueError("n must be non-negative")
        # a finite ring is known in every degree
        super().__init__(dmax if n is None else max(dmax, (1 << n) - 1))
        self.n = n
        self.name = "exterior" if n is None else f"exterior({n})"

    def _basis(self, d):
        if self.n is not None and d >= 1 << self.n:
            return ()
        return (d,)

    def label_degree(self, label):
        return label

    def _mono_mul(self, a, b):
        return exterior_mul(a, b)

    def generators(self):
        out, i = [], 0
        while 1 << i <= self.dmax and (self.n is None or i < self.n):
            out.append((1 << i, 1 << i))
            i += 1
        return out

    def top_degree(self) -> int | None:
        return None if self.n is None else (1 << self.n) - 1

    def x(self, *indices: int):
        return self.monomial(mask_of(indices))

    def format_label(self, label):
        return format_set(label)
