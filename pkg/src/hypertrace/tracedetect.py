"""Trace containment: does a hypergraph contain a graph as a trace?

A hypergraph contains ``F`` as a trace when some injective choice of base
vertices ``W`` and distinct edges ``f_i`` satisfy ``f_i & W == {w_a, w_b}``
for every pattern edge ``(a, b)``. Once ``W`` is fixed the admissible edges
for different pattern edges are disjoint, so distinctness comes for free and
the search only has to place base vertices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .hypercore import Edge, Hypergraph, MalformedInputError, mask_of
from .repfamily import SetFamily, find_disjointly_representable


@dataclass(frozen=True)
class PatternGraph:
    """A simple graph on vertices ``0..p-1``."""

    p: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ValueError("p must be non-negative")
        seen = set()
        canon = []
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if not (0 <= a < self.p and 0 <= b < self.p):
                raise ValueError(f"edge ({a}, {b}) outside 0..{self.p - 1}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)
            canon.append((a, b))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def q(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.p
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def search_order(self) -> list[int]:
        """Pattern vertices by descending degree, ties by index."""
        deg = self.degrees()
        return sorted(range(self.p), key=lambda v: (-deg[v], v))

    def star_size(self) -> Optional[int]:
        """``t`` if this is exactly ``K_{1,t}`` with center 0 and leaves 1..t."""
        if self.q == self.p - 1 and self.q >= 1 and all(
            (a, b) == (0, i + 1) for i, (a, b) in enumerate(self.edges)
        ):
            return self.q
        return None

    def to_dict(self) -> dict:
        return {"p": self.p, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, obj: object) -> "PatternGraph":
        if not isinstance(obj, dict) or not {"p", "edges"} <= obj.keys():
            raise MalformedInputError('expected an object with keys "p", "edges"')
        try:
            return cls(int(obj["p"]), tuple((int(a), int(b)) for a, b in obj["edges"]))
        except (TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad pattern graph: {exc}") from None


def star(t: int) -> PatternGraph:
    """``K_{1,t}``: center 0, leaves ``1..t``."""
    return PatternGraph(t + 1, tuple((0, i) for i in range(1, t + 1)))


def k2t(t: int) -> PatternGraph:
    """``K_{2,t}``: centers 0 and 1, leaves ``2..t+1``."""
    return PatternGraph(
        t + 2, tuple((0, j) for j in range(2, t + 2)) + tuple((1, j) for j in range(2, t + 2))
    )


def complete_graph(p: int) -> PatternGraph:
    return PatternGraph(p, tuple((a, b) for a in range(p) for b in range(a + 1, p)))


@dataclass(frozen=True)
class TraceWitness:
    base: tuple[int, ...]
    assignment: tuple[Edge, ...]

    def to_dict(self) -> dict:
        return {"base": list(self.base), "assignment": [list(e) for e in self.assignment]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def verify_witness(h: Hypergraph, f: PatternGraph, w: TraceWitness) -> bool:
    """Re-check the trace condition directly from the definition."""
    if len(w.base) != f.p or len(set(w.base)) != f.p:
        return False
    if len(w.assignment) != f.q or len(set(w.assignment)) != f.q:
        return False
    if any(e not in h.edge_set for e in w.assignment):
        return False
    wset = set(w.base)
    for (a, b), e in zip(f.edges, w.assignment):
        if set(e) & wset != {w.base[a], w.base[b]}:
            return False
    return True


def _assign(h: Hypergraph, f: PatternGraph, base: Sequence[int]) -> TraceWitness:
    wmask = mask_of(base)
    chosen = []
    for a, b in f.edges:
        target = (1 << base[a]) | (1 << base[b])
        chosen.append(next(e for e, m in zip(h.edges, h.masks) if m & wmask == target))
    return TraceWitness(tuple(base), tuple(chosen))


def contains_trace(h: Hypergraph, f: PatternGraph) -> Optional[TraceWitness]:
    """Return a trace witness of ``f`` in ``h``, or ``None``.

    Pattern vertices are placed in descending-degree order and host vertices
    tried in ascending order, so the first witness found is deterministic;
    each pattern edge gets the lexicographically least admissible edge.
    """
    base = kernels.trace_search(h.n, h.masks, f.p, f.edges, f.search_order())
    return None if base is None else _assign(h, f, base)


def contains_trace_through(h: Hypergraph, f: PatternGraph, edge: Sequence[int]) -> Optional[TraceWitness]:
    """Find a trace of ``f`` in ``h`` whose witness uses ``edge`` (which must be in ``h``).

    Used for incremental checks: if ``h`` minus ``edge`` is trace-free, any
    trace in ``h`` goes through ``edge``.
    """
    emask = mask_of(edge)
    base = kernels.trace_search_through(h.n, h.masks, f.p, f.edges, f.search_order(), emask)
    if base is None:
        return None
    w = _assign(h, f, base)
    # edge is admissible for exactly one pattern edge; put it there
    wmask = mask_of(base)
    assignment = list(w.assignment)
    for i, (a, b) in enumerate(f.edges):
        if emask & wmask == (1 << base[a]) | (1 << base[b]):
            assignment[i] = tuple(sorted(edge))
    return TraceWitness(w.base, tuple(assignment))


def contains_star_trace(h: Hypergraph, t: int) -> Optional[TraceWitness]:
    """Star-specific detector through disjointly representable link members.

    ``h`` has a ``K_{1,t}`` trace centered at ``v`` exactly when the link
    ``{e - {v} : v in e}`` has ``t`` disjointly representable members.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    f = star(t)
    for v in range(h.n):
        link_edges = [e for e in h.edges if v in e]
        if len(link_edges) < t:
            continue
        fam = SetFamily(h.n, tuple(tuple(x for x in e if x != v) for e in link_edges))
        got = find_disjointly_representable(fam, t)
        if got is None:
            continue
        idx, reps = got
        w = TraceWitness((v, *reps), tuple(link_edges[i] for i in idx))
        assert verify_witness(h, f, w)
        return w
    return None
