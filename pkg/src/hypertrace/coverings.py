"""Covering designs: t-(v,k,lambda) block families.

Every t-subset of the v points must lie in at least lambda blocks.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from . import kernels
from .hypercore import MalformedInputError


class CoveringError(ValueError):
    pass


class CoveringBudgetExhausted(RuntimeError):
    """Exact search ran out of budget; ``best`` is a valid covering, not proven minimal."""

    def __init__(self, best: "CoveringDesign", lower_bound: int, nodes: int):
        super().__init__(
            f"budget exhausted after {nodes} nodes; best covering has {len(best.blocks)} "
            f"blocks, optimum is at least {lower_bound}"
        )
        self.best = best
        self.lower_bound = lower_bound
        self.nodes = nodes
        self.optimal = False


@dataclass(frozen=True)
class CoveringDesign:
    v: int
    k: int
    t: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not (self.v >= self.k >= self.t >= 0) or self.lam < 1:
            raise CoveringError(
                f"need v >= k >= t >= 0 and lambda >= 1, got {self.v}, {self.k}, {self.t}, {self.lam}"
            )
        canon = []
        for blk in self.blocks:
            b = tuple(sorted(blk))
            if len(b) != self.k or len(set(b)) != self.k:
                raise CoveringError(f"block {list(blk)} does not have {self.k} distinct points")
            if b[0] < 0 or b[-1] >= self.v:
                raise CoveringError(f"block {list(blk)} not inside 0..{self.v - 1}")
            canon.append(b)
        object.__setattr__(self, "blocks", tuple(canon))

    @property
    def size(self) -> int:
        return len(self.blocks)

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "k": self.k,
            "t": self.t,
            "lambda": self.lam,
            "blocks": [list(b) for b in self.blocks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: object) -> "CoveringDesign":
        keys = {"v", "k", "t", "lambda", "blocks"}
        if not isinstance(obj, dict) or not keys <= obj.keys():
            raise MalformedInputError(f"expected an object with keys {sorted(keys)}")
        try:
            blocks = tuple(tuple(int(x) for x in b) for b in obj["blocks"])
            return cls(int(obj["v"]), int(obj["k"]), int(obj["t"]), int(obj["lambda"]), blocks)
        except TypeError as exc:
            raise MalformedInputError(f"bad covering design: {exc}") from None


@dataclass(frozen=True)
class CoverageCheck:
    valid: bool
    uncovered: tuple[tuple[int, ...], ...]
    max_multiplicity: int
    min_multiplicity: int


def coverage_counts(d: CoveringDesign) -> Counter:
    cnt: Counter = Counter()
    for b in d.blocks:
        cnt.update(combinations(b, d.t))
    return cnt


def verify_covering(d: CoveringDesign) -> CoverageCheck:
    """List every t-subset covered fewer than lambda times, in lexicographic order."""
    cnt = coverage_counts(d)
    uncovered = []
    lo, hi = None, 0
    for s in combinations(range(d.v), d.t):
        c = cnt[s]
        if c < d.lam:
            uncovered.append(s)
        lo = c if lo is None else min(lo, c)
        hi = max(hi, c)
    return CoverageCheck(not uncovered, tuple(uncovered), hi, lo or 0)


def steiner_triple_system(v: int) -> CoveringDesign:
    """A 2-(v,3,1) design: Bose construction for v = 6m+3, Skolem for v = 6m+1."""
    if v < 3 or v % 6 not in (1, 3):
        raise CoveringError(f"no Steiner triple system of order {v}: need v = 1 or 3 (mod 6)")
    blocks = _bose(v) if v % 6 == 3 else _skolem(v)
    return CoveringDesign(v, 3, 2, 1, tuple(sorted(tuple(sorted(b)) for b in blocks)))


def _bose(v: int) -> list[tuple[int, int, int]]:
    # points (x, i) in Z_n x Z_3 -> x + n*i, with the idempotent quasigroup x*y = (x+y)/2 mod n
    n = v // 3
    half = (n + 1) // 2

    def pt(x: int, i: int) -> int:
        return x + n * (i % 3)

    def op(x: int, y: int) -> int:
        return (x + y) * half % n

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)]
    for x, y in combinations(range(n), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return blocks


def _skolem(v: int) -> list[tuple[int, int, int]]:
    # half-idempotent commutative quasigroup of order 2n: relabelled addition mod 2n
    n = (v - 1) // 6
    q = 2 * n
    inf = 3 * q

    def pt(x: int, i: int) -> int:
        return x + q * (i % 3)

    def op(x: int, y: int) -> int:
        s = (x + y) % q
        return s // 2 if s % 2 == 0 else n + s // 2

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(n)]
    for x in range(n):
        for i in range(3):
            blocks.append((inf, pt(x + n, i), pt(x, i + 1)))
    for x, y in combinations(range(q), 2):
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
    return blocks


def turan_covering_size(nprime: int, h: int) -> int:
    groups = nprime - h - 1
    q = nprime // groups
    return q * nprime - comb(q + 1, 2) * groups


def turan_covering(nprime: int, h: int) -> CoveringDesign:
    """h-(n', n'-2, 1) covering from a balanced partition into n'-h-1 groups.

    Blocks are complements of pairs lying inside one group. An h-set leaves
    n'-h points outside it, two of which share a group by pigeonhole.
    """
    if h < 0 or nprime < h + 2:
        raise CoveringError(f"need n' >= h + 2 and h >= 0, got n'={nprime}, h={h}")
    groups = nprime - h - 1
    base, extra = divmod(nprime, groups)
    blocks = []
    start = 0
    for g in range(groups):
        size = base + (1 if g < extra else 0)
        members = range(start, start + size)
        for x, y in combinations(members, 2):
            blocks.append(tuple(p for p in range(nprime) if p not in (x, y)))
        start += size
    return CoveringDesign(nprime, nprime - 2, h, 1, tuple(sorted(blocks)))


def schonheim_bound(v: int, k: int, t: int, lam: int = 1) -> int:
    """Nested ceiling bound ceil(v/k * ceil((v-1)/(k-1) * ... ceil(lam(v-t+1)/(k-t+1))))."""
    if t == 0:
        return lam if v >= 0 else 0
    inner = -(-lam * (v - t + 1) // (k - t + 1))
    for i in range(t - 2, -1, -1):
        inner = -(-(v - i) * inner // (k - i))
    return inner


def greedy_covering(v: int, k: int, t: int, lam: int = 1) -> CoveringDesign:
    """Repeatedly take the lexicographically first block with the largest remaining deficit cover."""
    _check_params(v, k, t, lam)
    tsets = list(combinations(range(v), t))
    index = {s: i for i, s in enumerate(tsets)}
    need = [lam] * len(tsets)
    remaining = len(tsets) * lam
    cand = list(combinations(range(v), k))
    covers = [[index[s] for s in combinations(b, t)] for b in cand]
    chosen = []
    while remaining:
        best, gain = -1, 0
        for bi, cs in enumerate(covers):
            g = sum(1 for s in cs if need[s] > 0)
            if g > gain:
                best, gain = bi, g
        for s in covers[best]:
            if need[s] > 0:
                need[s] -= 1
                remaining -= 1
        chosen.append(cand[best])
    return CoveringDesign(v, k, t, lam, tuple(sorted(chosen)))


def _check_params(v: int, k: int, t: int, lam: int) -> None:
    if not (v >= k >= t >= 0) or lam < 1:
        raise CoveringError(f"need v >= k >= t >= 0 and lambda >= 1, got {v}, {k}, {t}, {lam}")


def min_covering_exact(
    v: int,
    k: int,
    t: int,
    lam: int = 1,
    upper_hint: Optional[int] = None,
    budget: int = 5_000_000,
    max_blocks: int = 100_000,
) -> CoveringDesign:
    """Minimum-size covering by iterative deepening from the Schonheim bound.

    A greedy covering fixes the starting upper cap. Each target size below it
    is searched by branching on the least uncovered t-set and trying the blocks
    containing it in lexicographic order; the first covering found at the
    smallest feasible size is returned, or the greedy covering when no smaller
    size is feasible. ``budget`` caps the total node count (0 for unlimited);
    on exhaustion the greedy covering is attached to the raised
    :class:`CoveringBudgetExhausted`. ``upper_hint`` is a size known to be
    achievable and tightens the cap.
    """
    _check_params(v, k, t, lam)
    if comb(v, k) > max_blocks:
        raise CoveringError(f"C({v},{k}) = {comb(v, k)} candidate blocks exceeds {max_blocks}")
    if lam != 1:
        return _min_covering_multi(v, k, t, lam, upper_hint, budget)
    tsets = list(combinations(range(v), t))
    index = {s: i for i, s in enumerate(tsets)}
    cand = list(combinations(range(v), k))
    block_cover = []
    set_blocks: list[list[int]] = [[] for _ in tsets]
    for bi, b in enumerate(cand):
        m = 0
        for s in combinations(b, t):
            m |= 1 << index[s]
            set_blocks[index[s]].append(bi)
        block_cover.append(m)
    point_sets = [0] * v
    for i, s in enumerate(tsets):
        for x in s:
            point_sets[x] |= 1 << i
    per_point = comb(k - 1, t - 1) if t else 0
    lower = schonheim_bound(v, k, t, lam)
    greedy = greedy_covering(v, k, t, lam)
    cap = greedy.size if upper_hint is None else min(upper_hint, greedy.size)
    nodes = 0
    for size in range(lower, cap + 1):
        if size == greedy.size:
            return greedy
        left = budget - nodes if budget else 0
        if budget and left <= 0:
            raise CoveringBudgetExhausted(greedy, size, nodes)
        try:
            got, used = kernels.cover_search(
                len(tsets), block_cover, set_blocks, size, comb(k, t), left, True,
                point_sets if t else (), per_point, k,
            )
        except kernels.BudgetExhausted as exc:
            raise CoveringBudgetExhausted(greedy, size, nodes + exc.nodes) from None
        nodes += used
        if got is not None:
            return CoveringDesign(v, k, t, lam, tuple(sorted(cand[b] for b in got)))
    raise CoveringError(f"no {t}-({v},{k},{lam}) covering with at most {cap} blocks")


def _min_covering_multi(
    v: int, k: int, t: int, lam: int, upper_hint: Optional[int], budget: int
) -> CoveringDesign:
    # lambda > 1: blocks may repeat; plain Python deficit-vector search
    tsets = list(combinations(range(v), t))
    index = {s: i for i, s in enumerate(tsets)}
    cand = list(combinations(range(v), k))
    covers = [[index[s] for s in combinations(b, t)] for b in cand]
    set_blocks: list[list[int]] = [[] for _ in tsets]
    for bi, cs in enumerate(covers):
        for s in cs:
            set_blocks[s].append(bi)
    per = comb(k, t)
    nodes = 0
    lower = schonheim_bound(v, k, t, lam)
    cap = upper_hint if upper_hint is not None else lam * len(cand)

    def descend(need: list[int], total: int, left: int, chosen: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if budget and nodes > budget:
            raise kernels.BudgetExhausted(nodes)
        if total == 0:
            return True
        if total > left * per:
            return False
        s = next(i for i, x in enumerate(need) if x > 0)
        for b in set_blocks[s]:
            hit = [x for x in covers[b] if need[x] > 0]
            for x in hit:
                need[x] -= 1
            chosen.append(b)
            if descend(need, total - len(hit), left - 1, chosen):
                return True
            chosen.pop()
            for x in hit:
                need[x] += 1
        return False

    for size in range(lower, cap + 1):
        need = [lam] * len(tsets)
        chosen: list[int] = []
        try:
            ok = descend(need, len(tsets) * lam, size, chosen)
        except kernels.BudgetExhausted:
            raise CoveringBudgetExhausted(greedy_covering(v, k, t, lam), size, nodes) from None
        if ok:
            return CoveringDesign(v, k, t, lam, tuple(sorted(cand[b] for b in chosen)))
    raise CoveringError(f"no {t}-({v},{k},{lam}) covering with at most {cap} blocks")

