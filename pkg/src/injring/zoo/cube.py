"""The cube algebra C = F2[y_0, y_1, ...] / (y_i^3 + y_i y_{i+1}), |y_i| = 2^i.

Monomials are exponent tuples indexed from 0 with trailing zeros removed.
``Cube(n, m)`` is C[n,m], where the relation is only used below index m so
the exponent at m is unbounded; ``bar=True`` gives C[n,m]/y_m.  Bases in each
degree are sorted lexicographically on the (zero-padded) exponent vectors.
"""

from __future__ import annotations

from typing import Callable, Sequence

from ..engine import Element, RingEngine

Multi = tuple[int, ...]


def trim(alpha: Sequence[int]) -> Multi:
    a = list(alpha)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def multi_degree(alpha: Sequence[int]) -> int:
    return sum(e << i for i, e in enumerate(alpha))


def is_flat(alpha: Sequence[int]) -> bool:
    return all(e < 3 for e in alpha)


def flatten(alpha: Sequence[int], cap: int | None = None) -> Multi:
    """Normal form under y_k^3 -> y_k y_{k+1} for k < cap (all k if cap is None).

    Rewrites at the smallest offending index first; batching the rewrites at
    one index gives the same result because nothing below it changes.
    """
    a = list(alpha)
    if any(e < 0 for e in a):
        raise ValueError("exponents must be non-negative")
    k = 0
    while k < len(a):
        if a[k] >= 3 and (cap is None or k < cap):
            t = (a[k] - 1) // 2
            a[k] -= 2 * t
            if k + 1 == len(a):
                a.append(0)
            a[k + 1] += t
        k += 1
    return trim(a)


def flatten_step(alpha: Sequence[int]) -> Multi | None:
    """One rewrite at the smallest index with exponent >= 3, or ``None`` if flat."""
    a = list(alpha)
    for k, e in enumerate(a):
        if e >= 3:
            a[k] -= 2
            if k + 1 == len(a):
                a.append(0)
            a[k + 1] += 1
            return trim(a)
    return None


def theta(m: int, k: int) -> Multi:
    """The m-solid multiindex whose monomial equals y_m^k."""
    if m < 0 or k < 0:
        raise ValueError("theta needs natural numbers")
    r = 0
    while (1 << (r + 1)) - 1 <= k:
        r += 1
    rest = k - ((1 << r) - 1)
    a = [0] * m + [2 if rest >> j & 1 else 1 for j in range(r)]
    return trim(a)


def _pad_key(alpha: Multi, width: int) -> Multi:
    return alpha + (0,) * (width - len(alpha))


class Cube(RingEngine):
    def __init__(self, dmax: int, n: int = 0, m: int | None = None, bar: bool = False):
        if n < 0 or (m is not None and m < n):
            raise ValueError("need 0 <= n <= m")
        if bar and m is None:
            raise ValueError("the bar quotient needs a finite m")
        if bar:
            dmax = max(dmax, (1 << (m + 1)) - (1 << (n + 1)))
        super().__init__(dmax)
        self.n, self.m, self.bar = n, m, bar
        if m is None:
            self.name = "cube" if n == 0 else f"cube({n},inf)"
        else:
            self.name = f"{'cube-bar' if bar else 'cube'}({n},{m})"

    def top_degree(self):
        if not self.bar:
            return None
        return (1 << (self.m + 1)) - (1 << (self.n + 1))

    # -- monomials --------------------------------------------------------
    def normalize(self, alpha: Sequence[int]) -> Multi | None:
        """Basis label equal to y^alpha in this ring, or ``None`` if it vanishes."""
        a = trim(alpha)
        if any(a[i] for i in range(min(self.n, len(a)))):
            raise ValueError(f"{a} uses generators below index {self.n}")
        if self.m is not None and len(a) > self.m + 1:
            raise ValueError(f"{a} uses generators above index {self.m}")
        a = flatten(a, self.m)
        if self.bar and len(a) > self.m:
            return None
        return a

    def _mono_mul(self, a, b):
        width = max(len(a), len(b))
        s = [x + y for x, y in zip(_pad_key(a, width), _pad_key(b, width))]
        return self.normalize(s)

    def label_degree(self, label):
        return multi_degree(label)

    def _basis(self, d):
        out: list[list[int]] = []
        top = self.m if self.m is not None else max(d, 1).bit_length()
        if self.bar:
            top = self.m - 1

        def rec(i, rem, acc):
            if rem == 0:
                out.append(acc[:])
                return
            if i > top or (1 << i) > rem:
                return
            if i == self.m and not self.bar:
                if rem % (1 << i) == 0:
                    acc.append(rem >> i)
                    out.append(acc[:])
                    acc.pop()
                return
            for e in range(3):
                r = rem - (e << i)
                if r < 0:
                    break
                if r % (1 << (i + 1)):
                    continue
                acc.append(e)
                rec(i + 1, r, acc)
                acc.pop()

        rec(self.n, d, [0] * self.n)
        labels = [trim(a) for a in out]
        width = d.bit_length() + 1 + (self.m or 0)
        return sorted(labels, key=lambda a: _pad_key(a, width))

    def generators(self):
        hi = self.m if self.m is not None else self.dmax.bit_length()
        if self.bar:
            hi -= 1
        out = []
        for i in range(self.n, hi + 1):
            if 1 << i <= self.dmax:
                out.append((trim([0] * i + [1]), 1 << i))
        return out

    def format_label(self, label):
        parts = []
        for i, e in enumerate(label):
            if e == 1:
                parts.append(f"y{i}")
            elif e > 1:
                parts.append(f"y{i}^{e}")
        return "*".join(parts) or "1"

    # -- named elements ---------------------------------------------------
    def y(self, i: int, power: int = 1) -> Element:
        lab = self.normalize([0] * i + [power])
        d = power << i
        if lab is None:
            return self.zero(d)
        return self.monomial(lab)

    def y_alpha(self, alpha: Sequence[int]) -> Element:
        lab = self.normalize(alpha)
        d = multi_degree(alpha)
        return self.zero(d) if lab is None else self.monomial(lab)

    def y_interval(self, lo: int, hi: int) -> Element:
        """y_{[lo,hi]}, the product of y_lo, ..., y_hi (unit when hi < lo)."""
        out = self.unit()
        for i in range(lo, hi + 1):
            out = out * self.y(i)
        return out

    def x(self, k: int) -> Element:
        """x_0 = y_0 and x_k = y_k + y_{k-1}^2."""
        if k == 0:
            return self.y(0)
        return self.y(k) + self.y(k - 1, 2)

    def include(self, a: Element) -> Element:
        """Carry an element of another cube ring across by its exponent labels.

        This is the inclusion C[n,m] -> C[n',m'] when that is a ring map, and
        the section of C[n,m] -> C[n,m]/y_m on the span of monomials without y_m.
        """
        out = self.zero(a.degree)
        for lab in a.labels():
            out = out + self.y_alpha(lab)
        return out

    def project_bar(self, a: Element, target: "Cube") -> Element:
        """C[n,m] -> C[n,m]/y_m, dropping monomials that contain y_m."""
        out = target.zero(a.degree)
        for lab in a.labels():
            if len(lab) <= target.m:
                out = out + target.y_alpha(lab)
        return out


def cube_x(engine: Cube, k: int) -> Element:
    return engine.x(k)


def y_from_x(engine: Cube, n: int) -> Element:
    """sum_{i<=n} x_{n-i}^{2^i}, which equals y_n."""
    out = engine.zero(1 << n)
    for i in range(n + 1):
        out = out + engine.x(n - i) ** (1 << i)
    return out


def evaluate(target: RingEngine, alpha: Sequence[int], image: Callable[[int], Element]) -> Element:
    out = target.unit()
    for i, e in enumerate(alpha):
        if e:
            out = out * image(i) ** e
    return out


def tau_retraction(target: Cube, a: Element) -> Element:
    """The retraction C -> C[n,m]: y_i maps to 0, y_i or y_m^(2^(i-m))."""
    if target.bar:
        raise ValueError("the retraction lands in C[n,m], not its bar quotient")
    n, m = target.n, target.m

    def image(i):
        if i < n:
            return target.zero(1 << i)
        if m is None or i <= m:
            return target.y(i)
        return target.y(m) ** (1 << (i - m))

    out = target.zero(a.degree)
    for lab in a.labels():
        out = out + evaluate(target, lab, image)
    return out


def flat_count(d: int, lo: int = 0) -> int:
    """Brute-force count of flat multiindices of degree d (test oracle)."""
    from itertools import product

    width = max(d, 1).bit_length()
    return sum(
        1
        for a in product(range(3), repeat=width)
        if multi_degree(a) == d and not any(a[:lo])
    )
