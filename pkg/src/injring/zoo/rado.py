"""The Rado graph and the Rado algebra Q = E / (x_i x_j : no edge i--j)."""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from ..engine import RingEngine
from .exterior import format_set, mask_of, set_of


def bset(n: int) -> frozenset[int]:
    """Exponents in the binary expansion of n."""
    if n < 0:
        raise ValueError("bset needs a natural number")
    return frozenset(set_of(n))


def edge(i: int, j: int) -> bool:
    if i == j:
        raise ValueError("the Rado graph has no loops")
    if i < 0 or j < 0:
        raise ValueError("vertices are natural numbers")
    return bool((j >> i) & 1 or (i >> j) & 1)


def gamma_complete(vertices: Iterable[int]) -> bool:
    vs = sorted(set(vertices))
    return all(edge(a, b) for a, b in combinations(vs, 2))


def complete_mask(mask: int) -> bool:
    return gamma_complete(set_of(mask))


class Graph:
    """Finite simple graph."""

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]] = ()):
        self.vertices = list(dict.fromkeys(vertices))
        vs = set(self.vertices)
        self.adj: dict[Hashable, set] = {v: set() for v in self.vertices}
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a}, {b}) leaves the vertex set")
            self.adj[a].add(b)
            self.adj[b].add(a)

    def has_edge(self, a, b) -> bool:
        return b in self.adj[a]

    def induced(self, vertices: Iterable[Hashable]) -> "Graph":
        vs = list(vertices)
        keep = set(vs)
        es = [(a, b) for a in vs for b in self.adj[a] if b in keep]
        return Graph(vs, es)


def is_full_embedding(g: Graph, f: Mapping[Hashable, int]) -> bool:
    if set(f) != set(g.vertices):
        return False
    if len(set(f.values())) != len(f) or any(v < 0 for v in f.values()):
        return False
    for a, b in combinations(g.vertices, 2):
        if g.has_edge(a, b) != edge(f[a], f[b]):
            return False
    return True


def extend_embedding(big: Graph, sub: Sequence[Hashable], f: Mapping[Hashable, int]) -> dict:
    """Extend a full embedding of the induced subgraph on ``sub`` to all of ``big``.

    New vertices are placed one at a time, in ``big.vertices`` order, at
    ``2^N + sum(2^f(v) for neighbours v)`` with N one more than the largest
    value used so far.
    """
    sub = list(sub)
    if not set(sub) <= set(big.vertices):
        raise ValueError("subgraph vertices must lie in the big graph")
    if not is_full_embedding(big.induced(sub), f):
        raise ValueError("f is not a full embedding of the subgraph into the Rado graph")
    out = dict(f)
    for x in big.vertices:
        if x in out:
            continue
        n = max(out.values()) + 1 if out else 0
        out[x] = (1 << n) + sum(1 << out[v] for v in out if big.has_edge(v, x))
    return out


def rado_witness(gens: Sequence[int], target: int) -> int | None:
    """Index n with x_n killing every x_A (A in gens) but not x_T.

    Sets are bitmasks.  Returns ``None`` when T contains some A, in which
    case x_T already lies in the ideal.
    """
    if any(a & ~target == 0 for a in gens):
        return None
    top = max([target, *gens, 1]).bit_length()
    return (1 << top) | target


def check_rado_witness(gens: Sequence[int], target: int, n: int) -> bool:
    """Label-level check that x_n annihilates the generators and not x_T."""
    def nonzero(mask, k):
        return not mask >> k & 1 and gamma_complete(set_of(mask) + (k,))
    if not gamma_complete(set_of(target)):
        return False
    return nonzero(target, n) and not any(nonzero(a, n) for a in gens)


class Rado(RingEngine):
    name = "rado"

    def _basis(self, d):
        return (d,) if complete_mask(d) else ()

    def label_degree(self, label):
        return label

    def _mono_mul(self, a, b):
        if a & b:
            return None
        c = a | b
        return c if complete_mask(c) else None

    def generators(self):
        out, i = [], 0
        while 1 << i <= self.dmax:
            out.append((1 << i, 1 << i))
            i += 1
        return out

    def x(self, *indices: int):
        m = mask_of(indices)
        if not complete_mask(m):
            raise ValueError(f"{format_set(m)} is not a basis monomial: the index set is not complete in the Rado graph")
        return self.monomial(m)

    def format_label(self, label):
        return format_set(label)
