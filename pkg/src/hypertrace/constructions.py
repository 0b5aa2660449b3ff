"""Star-trace-free lower-bound constructions and exact-value certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .coverings import (
    CoveringBudgetExhausted,
    CoveringDesign,
    CoveringError,
    min_covering_exact,
    steiner_triple_system,
    turan_covering,
    verify_covering,
)
from .hypercore import Hypergraph


@dataclass(frozen=True)
class ConstructionReport:
    hypergraph: Hypergraph
    edge_count: int
    formula_value: int
    method: str  # "fl" or "covering"
    n: int
    r: int
    t: int
    a: int
    b: int
    c: int

    def to_dict(self) -> dict:
        return {
            "edges": self.edge_count,
            "formula": self.formula_value,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "method": self.method,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check(n: int, r: int, t: int) -> None:
    if r < 2 or t < 2 or n < 0:
        raise ValueError(f"need r >= 2, t >= 2, n >= 0; got n={n}, r={r}, t={t}")


def fl_value(n: int, r: int, t: int) -> int:
    s = r + t - 2
    a, b = divmod(n, s)
    return a * comb(s, r) + comb(b, r)


def covering_value(n: int, r: int, t: int, c: int) -> int:
    s = r + t - 1
    a, b = divmod(n, s)
    return a * (comb(s, r) - c) + comb(b, r)


def fl_star_free(n: int, r: int, t: int) -> ConstructionReport:
    """Disjoint complete r-graphs on r+t-2 vertices plus one clique on the rest."""
    _check(n, r, t)
    s = r + t - 2
    a, b = divmod(n, s)
    edges = []
    for i in range(a + 1):
        part = range(i * s, min((i + 1) * s, n))
        edges.extend(combinations(part, r))
    h = Hypergraph(n, r, tuple(edges))
    return ConstructionReport(h, h.num_edges, fl_value(n, r, t), "fl", n, r, t, a, b, 0)


def covering_star_free(n: int, r: int, t: int, cov: CoveringDesign) -> ConstructionReport:
    """Cliques on r+t-1 vertices, each minus a copy of ``cov``, plus a leftover clique.

    ``cov`` must be a valid (r-1)-(r+t-1, r, 1) covering with distinct blocks;
    component ``i`` occupies vertices ``[i(r+t-1), (i+1)(r+t-1))`` and receives
    the covering through the order-preserving relabelling.
    """
    _check(n, r, t)
    s = r + t - 1
    if (cov.v, cov.k, cov.t) != (s, r, r - 1):
        raise CoveringError(
            f"expected a {r - 1}-({s},{r},1) covering, got {cov.t}-({cov.v},{cov.k},{cov.lam})"
        )
    if len(set(cov.blocks)) != len(cov.blocks):
        raise CoveringError("covering has repeated blocks")
    check = verify_covering(CoveringDesign(cov.v, cov.k, cov.t, 1, cov.blocks))
    if not check.valid:
        raise CoveringError(f"not a covering: {len(check.uncovered)} uncovered {r - 1}-sets")
    c = cov.size
    a, b = divmod(n, s)
    deleted = set(cov.blocks)
    edges = []
    for i in range(a):
        off = i * s
        edges.extend(
            tuple(x + off for x in e) for e in combinations(range(s), r) if e not in deleted
        )
    edges.extend(combinations(range(a * s, n), r))
    h = Hypergraph(n, r, tuple(edges))
    return ConstructionReport(h, h.num_edges, covering_value(n, r, t, c), "covering", n, r, t, a, b, c)


@dataclass(frozen=True)
class ExactValue:
    value: int
    case: str


def exact_star_value(n: int, r: int, t: int) -> Optional[ExactValue]:
    """Known exact values of the star-trace Turan number, else ``None``.

    r = 3 with (t+2) | n: n(t^2-2)/6 when t+2 = 0 (mod 6), n(t^2-1)/6 when
    t+2 = 1 or 3 (mod 6). r = 2k, t = 3 with 2k(k+1) | n: n(k+1)/2.
    """
    if n <= 0 or t < 2 or r < 2:
        return None
    if r == 3 and n % (t + 2) == 0:
        if (t + 2) % 6 == 0:
            return ExactValue(n * (t * t - 2) // 6, "r3-even")
        if (t + 2) % 6 in (1, 3):
            return ExactValue(n * (t * t - 1) // 6, "r3-odd")
    if r % 2 == 0 and t == 3:
        k = r // 2
        if n % (2 * k * (k + 1)) == 0:
            return ExactValue(n * (k + 1) // 2, "r2k")
    return None


def star_free_covering(r: int, t: int, budget: int = 2_000_000) -> tuple[CoveringDesign, bool]:
    """An (r-1)-(r+t-1, r, 1) covering for the construction, and whether it is known minimum.

    Turan coverings for t = 3 and Steiner triple systems for r = 3 are optimal
    outright; other cases go through the exact search, falling back to the
    greedy covering when the budget runs out.
    """
    _check(3, r, t)
    s = r + t - 1
    if t == 3:
        return turan_covering(s, r - 1), True
    if r == 3 and s % 6 in (1, 3):
        return steiner_triple_system(s), True
    try:
        return min_covering_exact(s, r, r - 1, 1, budget=budget), True
    except CoveringBudgetExhausted as exc:
        return exc.best, False
