"""Pure-Python row reduction over GF(2).

Rows are Python ints; bit ``j`` is column ``j``.  The pivot of a row is
its lowest set bit.
"""

from __future__ import annotations

from typing import Iterable


def rref(rows: Iterable[int], nbits: int | None = None) -> list[int]:
    """Reduced row echelon form, rows sorted by ascending pivot."""
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            p = piv.get(low)
            if p is None:
                piv[low] = r
                break
            r ^= p
    if not piv:
        return []
    order = sorted(piv)
    done: dict[int, int] = {}
    mask = 0
    for low in reversed(order):
        r = piv[low]
        m = r & mask
        while m:
            b = m & -m
            r ^= done[b]
            m ^= b
        done[low] = r
        mask |= low
    return [done[low] for low in order]
