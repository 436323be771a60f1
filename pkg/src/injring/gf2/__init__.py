"""Linear algebra over GF(2) on int-encoded bit vectors.

The elimination kernel comes from the compiled ``_core`` extension when it
is importable and from ``_pure`` otherwise.  Set ``INJRING_PURE=1`` to force
the pure-Python path.  Every helper here only depends on ``rref``.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

from . import _pure

BACKEND = "pure"
_rref = _pure.rref

if not os.environ.get("INJRING_PURE"):
    try:
        from . import _core  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _rref = _core.rref
        BACKEND = "cython"

__all__ = [
    "BACKEND",
    "rref",
    "rank",
    "reduce",
    "in_span",
    "kernel",
    "solve",
    "intersect",
    "span_sum",
    "popcount",
    "bits",
]

# below this many rows the conversion overhead of the compiled path dominates
_SMALL = 24


def rref(rows: Iterable[int], nbits: int | None = None) -> list[int]:
    rows = [r for r in rows if r]
    if len(rows) < _SMALL:
        return _pure.rref(rows)
    return _rref(rows, nbits)


def rank(rows: Iterable[int]) -> int:
    return len(rref(rows))


def popcount(v: int) -> int:
    return v.bit_count()


def bits(v: int):
    """Indices of set bits, ascending."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def reduce(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against rows already in RREF."""
    for r in basis:
        if v & (r & -r):
            v ^= r
    return v


def in_span(v: int, basis: Sequence[int]) -> bool:
    return reduce(v, basis) == 0


def kernel(images: Sequence[int], nbits: int) -> list[int]:
    """Basis (RREF) of ``{c : sum_j c_j images[j] = 0}``.

    ``images[j]`` is the image of the j-th source basis vector and must fit in
    ``nbits`` bits.
    """
    aug = [img | (1 << (nbits + j)) for j, img in enumerate(images)]
    mask = (1 << nbits) - 1
    return [r >> nbits for r in rref(aug, nbits + len(images)) if not r & mask]


def solve(images: Sequence[int], target: int, nbits: int) -> int | None:
    """Some ``c`` with ``sum_j c_j images[j] = target``, or ``None``."""
    if not target:
        return 0
    aug = [img | (1 << (nbits + j)) for j, img in enumerate(images)]
    mask = (1 << nbits) - 1
    t = target
    for r in rref(aug, nbits + len(images)):
        if not r & mask:
            break
        if t & (r & -r):
            t ^= r
    if t & mask:
        return None
    return t >> nbits


def span_sum(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return rref(list(a) + list(b))


def intersect(a: Sequence[int], b: Sequence[int], nbits: int) -> list[int]:
    """RREF basis of span(a) ∩ span(b)."""
    a, b = list(a), list(b)
    if not a or not b:
        return []
    ker = kernel(a + b, nbits)
    na = len(a)
    out = []
    for c in ker:
        v = 0
        for j in bits(c & ((1 << na) - 1)):
            v ^= a[j]
        out.append(v)
    return rref(out)
