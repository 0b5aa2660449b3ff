"""Uniform hypergraphs: representation, co-degrees, neighborhoods, JSON I/O."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, ...]


class HypergraphError(ValueError):
    """Base class for rejected hypergraph input."""


class MalformedInputError(HypergraphError):
    pass


class EdgeSizeError(HypergraphError):
    pass


class VertexRangeError(HypergraphError):
    pass


class DuplicateEdgeError(HypergraphError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Hypergraph:
    """An ``r``-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored as ascending tuples and the edge list is kept in
    lexicographic order, so two hypergraphs with the same edge set compare
    equal and serialize identically.
    """

    n: int
    r: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise MalformedInputError(f"n must be a non-negative integer, got {self.n!r}")
        if not isinstance(self.r, int) or self.r < 2:
            raise MalformedInputError(f"r must be an integer >= 2, got {self.r!r}")
        canon = []
        for raw in self.edges:
            e = tuple(sorted(raw))
            if len(set(e)) != self.r or len(e) != self.r:
                raise EdgeSizeError(f"edge {list(raw)} does not have {self.r} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise VertexRangeError(f"edge {list(raw)} has a vertex outside 0..{self.n - 1}")
            canon.append(e)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise DuplicateEdgeError(f"duplicate edge {list(a)}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Vertex bitmask of every edge, parallel to ``edges``."""
        return tuple(mask_of(e) for e in self.edges)

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """For each vertex, a bitmask over edge indices of the edges containing it."""
        inc = [0] * self.n
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v] |= 1 << i
        return tuple(inc)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        _check_vertex(self, v)
        return self.incidence[v].bit_count()

    def average_degree(self) -> float:
        return self.r * len(self.edges) / self.n if self.n else 0.0

    def with_edges(self, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        return Hypergraph(self.n, self.r, tuple(tuple(e) for e in edges))

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return serialize_hypergraph(self)

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        return cls(n, r, tuple(combinations(range(n), r)))


@dataclass(frozen=True)
class EdgeSplit:
    """Partition of E(H) into edges with a co-degree-1 pair (``a_edges``) and the rest."""

    a_edges: tuple[Edge, ...]
    b_edges: tuple[Edge, ...]
    source: Hypergraph = field(repr=False)

    def a_hypergraph(self) -> Hypergraph:
        return self.source.with_edges(self.a_edges)

    def b_hypergraph(self) -> Hypergraph:
        return self.source.with_edges(self.b_edges)


def _check_vertex(h: Hypergraph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < h.n:
        raise VertexRangeError(f"vertex {v!r} outside 0..{h.n - 1}")


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the JSON form ``{"n": int, "r": int, "edges": [[int, ...], ...]}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    return hypergraph_from_dict(obj)


def hypergraph_from_dict(obj: object) -> Hypergraph:
    if not isinstance(obj, dict) or not {"n", "r", "edges"} <= obj.keys():
        raise MalformedInputError('expected an object with keys "n", "r", "edges"')
    n, r, edges = obj["n"], obj["r"], obj["edges"]
    if type(n) is not int or type(r) is not int:
        raise MalformedInputError('"n" and "r" must be integers')
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and all(type(x) is int for x in e) for e in edges
    ):
        raise MalformedInputError('"edges" must be a list of integer lists')
    return Hypergraph(n, r, tuple(tuple(e) for e in edges))


def serialize_hypergraph(h: Hypergraph) -> str:
    return json.dumps(h.to_dict())


def codegree(h: Hypergraph, x: int, y: int) -> int:
    """Number of edges containing both ``x`` and ``y``."""
    _check_vertex(h, x)
    _check_vertex(h, y)
    if x == y:
        raise ValueError("co-degree needs two distinct vertices")
    return (h.incidence[x] & h.incidence[y]).bit_count()


def codegrees(h: Hypergraph) -> Counter:
    """Co-degree of every pair that lies in at least one edge."""
    c: Counter = Counter()
    for e in h.edges:
        c.update(combinations(e, 2))
    return c


def split_codegree_one(h: Hypergraph) -> EdgeSplit:
    """Split edges by whether some pair inside them has co-degree exactly 1 in ``h``."""
    cd = codegrees(h)
    a, b = [], []
    for e in h.edges:
        if any(cd[p] == 1 for p in combinations(e, 2)):
            a.append(e)
        else:
            b.append(e)
    return EdgeSplit(tuple(a), tuple(b), h)


def neighbor_mask(h: Hypergraph, v: int) -> int:
    m = 0
    inc = h.incidence[v]
    for i in bits(inc):
        m |= h.masks[i]
    return m & ~(1 << v)


def neighborhoods(h: Hypergraph, v: int) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices at distance exactly 1 and exactly 2 from ``v``."""
    _check_vertex(h, v)
    n1 = neighbor_mask(h, v)
    reach = 0
    for i, em in enumerate(h.masks):
        if em & n1:
            reach |= em
    n2 = reach & ~n1 & ~(1 << v)
    return frozenset(bits(n1)), frozenset(bits(n2))
