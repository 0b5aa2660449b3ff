"""Exact extremal search at tiny scale, random maximal trace-free instances,
and per-instance checks of the K_{2,t} co-degree/neighborhood inequalities."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from . import kernels
from .bounds import star_upper_bound
from .hypercore import Hypergraph, bits, mask_of, split_codegree_one
from .tracedetect import PatternGraph, TraceWitness, contains_trace, k2t


class SearchGuardError(ValueError):
    pass


class TracePresentError(ValueError):
    """The input hypergraph contains the pattern it was assumed to avoid."""

    def __init__(self, witness: TraceWitness):
        super().__init__(f"hypergraph contains the pattern as a trace: {witness.to_json()}")
        self.witness = witness


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness: Hypergraph
    complete: bool
    nodes: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "complete": self.complete,
            "nodes": self.nodes,
            "witness": self.witness.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _through(n: int, masks: list[int], f: PatternGraph, order: list[int], emask: int) -> bool:
    return kernels.trace_search_through(n, masks, f.p, f.edges, order, emask) is not None


def exact_extremal(
    n: int, r: int, f: PatternGraph, budget: Optional[int] = None, max_subsets: int = 40
) -> SearchResult:
    """Largest trace-free r-graph on ``n`` vertices by include/exclude branch and bound.

    r-subsets are decided in lexicographic order, include first; a subset is
    only included when no trace appears through it, and a branch is cut when
    the remaining subsets cannot beat the incumbent. For a star pattern the
    incumbent is also compared against the floor of ``(n/r) f(r-1, t)``, which
    ends the search once reached. ``budget`` caps the node count; searches
    over more than ``max_subsets`` subsets need an explicit budget.
    """
    if f.q == 0:
        raise ValueError("pattern must have at least one edge")
    cands = [mask_of(c) for c in combinations(range(n), r)]
    if len(cands) > max_subsets and budget is None:
        raise SearchGuardError(
            f"C({n},{r}) = {len(cands)} subsets exceeds {max_subsets}; pass a budget"
        )
    t = f.star_size()
    cap = len(cands)
    if t is not None and t >= 2:
        cap = min(cap, math.floor(star_upper_bound(n, r, t).value))
    order = f.search_order()
    chosen: list[int] = []
    best: list[int] = []
    nodes = 0
    complete = True

    class _Stop(Exception):
        pass

    def descend(i: int) -> None:
        nonlocal best, nodes, complete
        nodes += 1
        if budget is not None and nodes > budget:
            complete = False
            raise _Stop
        if len(chosen) > len(best):
            best = list(chosen)
            if len(best) >= cap:
                raise _Stop
        if i == len(cands) or len(chosen) + len(cands) - i <= len(best):
            return
        chosen.append(cands[i])
        if not _through(n, chosen, f, order, cands[i]):
            descend(i + 1)
        chosen.pop()
        descend(i + 1)

    try:
        descend(0)
    except _Stop:
        pass
    witness = Hypergraph(n, r, tuple(tuple(bits(m)) for m in best))
    if contains_trace(witness, f) is not None:
        raise AssertionError("search produced a hypergraph containing the pattern")
    return SearchResult(witness.num_edges, witness, complete, nodes)


def random_maximal_trace_free(n: int, r: int, f: PatternGraph, seed: int) -> Hypergraph:
    """Greedy maximal trace-free r-graph over a seeded random order of all r-subsets."""
    rng = random.Random(seed)
    cands = list(combinations(range(n), r))
    rng.shuffle(cands)
    order = f.search_order()
    masks: list[int] = []
    kept = []
    for c in cands:
        m = mask_of(c)
        masks.append(m)
        if _through(n, masks, f, order, m):
            masks.pop()
        else:
            kept.append(c)
    return Hypergraph(n, r, tuple(kept))


@dataclass
class K2tLemmaReport:
    t: int
    n: int
    b_edges: int
    max_codegree_B: int
    codegree_bound: int
    max_common_nbhd: int
    common_nbhd_bound: int
    vu_intersection_max: int
    vu_lower_slack: Optional[Fraction]
    eu_lower_slack: Optional[int]
    vu_sum_slack: Optional[int]
    degree_sum_slack: Optional[int]
    link_density_holds: bool
    violations: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            return x

        return {
            "t": self.t,
            "n": self.n,
            "b_edges": self.b_edges,
            "max_codegree_B": self.max_codegree_B,
            "codegree_bound": self.codegree_bound,
            "max_common_nbhd": self.max_common_nbhd,
            "common_nbhd_bound": self.common_nbhd_bound,
            "vu_intersection_max": self.vu_intersection_max,
            "vu_lower_slack": num(self.vu_lower_slack),
            "eu_lower_slack": self.eu_lower_slack,
            "vu_sum_slack": self.vu_sum_slack,
            "degree_sum_slack": self.degree_sum_slack,
            "link_density_holds": self.link_density_holds,
            "holds": self.holds,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _min(cur, x):
    return x if cur is None or x < cur else cur


def check_k2t_lemmas(h: Hypergraph, t: int, max_violations: int = 50) -> K2tLemmaReport:
    """Evaluate the co-degree and neighborhood inequalities on a Tr(K_{2,t})-free 3-graph.

    B is the set of edges with no co-degree-1 pair; neighborhoods, degrees and
    co-degrees below are all taken in B. Checked for every pair/vertex:

    * co-degree in B at most 3t-3;
    * ``|N1(x) & N1(y)| <= (t-1)(6t-2)``;
    * for ``{v,u,w}`` in B, ``|V_u & V_w| <= (t-1)(6t-2)``;
    * ``|E_u| >= d(u) - (3t-3) - 3(t-1)^2(6t-2)`` and
      ``|V_u| >= 2/(3t-3) * (d(u) - (3t-3) - 3(t-1)^2(6t-2))``;
    * ``sum_{u in N1(v)} |V_u| <= (t-1)(6t-2) n``;
    * ``|V| >= (2/k)|E|`` with k the largest co-degree in B, for the star of
      each vertex and for each ``E_u``;
    * ``sum_{u in N1(v)} d(u) <= 3(t-1)^2(3t-1) n + 2 d(v) f(t)``.

    where ``E_u`` are the B-edges meeting ``N1(v)`` only in ``u`` and ``V_u``
    the vertices of ``N2(v)`` they reach.
    """
    if h.r != 3:
        raise ValueError(f"expected a 3-uniform hypergraph, got r={h.r}")
    if t < 2:
        raise ValueError("t must be at least 2")
    w = contains_trace(h, k2t(t))
    if w is not None:
        raise TracePresentError(w)

    n = h.n
    bmasks = [mask_of(e) for e in split_codegree_one(h).b_edges]
    cd_bound = 3 * t - 3
    cn_bound = (t - 1) * (6 * t - 2)
    corr = 3 * (t - 1) ** 2 * (6 * t - 2)
    ft = cd_bound + corr

    star = [[m for m in bmasks if m >> v & 1] for v in range(n)]
    deg = [len(s) for s in star]
    n1 = [0] * n
    for v in range(n):
        for m in star[v]:
            n1[v] |= m
        n1[v] &= ~(1 << v)

    violations: list[str] = []

    def flag(msg: str) -> None:
        if len(violations) < max_violations:
            violations.append(msg)

    max_cd = 0
    for m in bmasks:
        for x, y in combinations(bits(m), 2):
            c = sum(1 for e in star[x] if e >> y & 1)
            if c > max_cd:
                max_cd = c
    if max_cd > cd_bound:
        flag(f"co-degree {max_cd} in B exceeds {cd_bound}")

    max_cn = 0
    for x, y in combinations(range(n), 2):
        c = (n1[x] & n1[y]).bit_count()
        if c > max_cn:
            max_cn = c
        if c > cn_bound:
            flag(f"|N1({x}) & N1({y})| = {c} exceeds {cn_bound}")

    k = max_cd
    link_ok = True
    vu_int = 0
    vu_slack = eu_slack = sum_slack = dsum_slack = None
    for v in range(n):
        if k and n1[v].bit_count() * k < 2 * deg[v]:
            link_ok = False
            flag(f"|N1({v})| = {n1[v].bit_count()} below 2/{k} * {deg[v]}")
        reach = 0
        for m in bmasks:
            if m & n1[v]:
                reach |= m
        n2 = reach & ~n1[v] & ~(1 << v)
        vu = {}
        for u in bits(n1[v]):
            eu = [m for m in star[u] if m & n1[v] == 1 << u]
            vmask = 0
            for m in eu:
                vmask |= m
            vmask &= n2
            vu[u] = vmask
            size = vmask.bit_count()
            if k and size * k < 2 * len(eu):
                link_ok = False
                flag(f"v={v}, u={u}: |V_u| = {size} below 2/{k} * |E_u| = {len(eu)}")
            eu_gap = len(eu) - (deg[u] - ft)
            eu_slack = _min(eu_slack, eu_gap)
            if eu_gap < 0:
                flag(f"v={v}, u={u}: |E_u| = {len(eu)} below d(u) - f(t) = {deg[u] - ft}")
            gap = size - Fraction(2 * (deg[u] - ft), cd_bound)
            vu_slack = _min(vu_slack, gap)
            if gap < 0:
                flag(f"v={v}, u={u}: |V_u| = {size} below its lower bound by {-gap}")
        for m in star[v]:
            u, w2 = [x for x in bits(m) if x != v]
            c = (vu[u] & vu[w2]).bit_count()
            vu_int = max(vu_int, c)
            if c > cn_bound:
                flag(f"v={v}: |V_{u} & V_{w2}| = {c} exceeds {cn_bound}")
        total = sum(x.bit_count() for x in vu.values())
        s_gap = cn_bound * n - total
        sum_slack = _min(sum_slack, s_gap)
        if s_gap < 0:
            flag(f"v={v}: sum |V_u| = {total} exceeds {cn_bound * n}")
        dsum = sum(deg[u] for u in bits(n1[v]))
        d_gap = 3 * (t - 1) ** 2 * (3 * t - 1) * n + 2 * deg[v] * ft - dsum
        dsum_slack = _min(dsum_slack, d_gap)
        if d_gap < 0:
            flag(f"v={v}: sum of d(u) over N1 = {dsum} exceeds its bound by {-d_gap}")

    return K2tLemmaReport(
        t=t,
        n=n,
        b_edges=len(bmasks),
        max_codegree_B=max_cd,
        codegree_bound=cd_bound,
        max_common_nbhd=max_cn,
        common_nbhd_bound=cn_bound,
        vu_intersection_max=vu_int,
        vu_lower_slack=vu_slack,
        eu_lower_slack=eu_slack,
        vu_sum_slack=sum_slack,
        degree_sum_slack=dsum_slack,
        link_density_holds=link_ok,
        violations=violations,
    )
