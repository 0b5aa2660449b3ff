"""Pure-Python search kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when the
extension is not built, for hosts wider than 64 vertices, and as the reference
in the kernel-agreement tests.
"""
from __future__ import annotations

from typing import Optional, Sequence


class BudgetExhausted(Exception):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def trace_search(
    n: int,
    masks: Sequence[int],
    p: int,
    pattern_edges: Sequence[tuple[int, int]],
    order: Sequence[int],
    prefix: Sequence[int] = (),
    forbidden: int = 0,
) -> Optional[tuple[int, ...]]:
    """Find base vertices realising the pattern as a trace, or ``None``.

    ``order`` lists every pattern vertex once; the first ``len(prefix)`` of
    them are pinned to the host vertices in ``prefix``. Host vertices in
    ``forbidden`` are never used for unpinned pattern vertices. The result is
    indexed by pattern vertex.
    """
    q = len(pattern_edges)
    if q > len(masks) or p > n:
        return None
    inc = [0] * n
    nbr = [0] * n
    for i, em in enumerate(masks):
        bit = 1 << i
        for v in _bits(em):
            inc[v] |= bit
            nbr[v] |= em
    for v in range(n):
        nbr[v] &= ~(1 << v)
    hdeg = [c.bit_count() for c in inc]

    pdeg = [0] * p
    for a, b in pattern_edges:
        pdeg[a] += 1
        pdeg[b] += 1
    pos = {v: i for i, v in enumerate(order)}
    # earlier[i]: pattern vertices adjacent to order[i] that are placed before it
    earlier: list[list[int]] = [[] for _ in range(p)]
    for a, b in pattern_edges:
        if pos[a] < pos[b]:
            earlier[pos[b]].append(a)
        else:
            earlier[pos[a]].append(b)

    base = [-1] * p
    placed: list[int] = []  # host vertices in placement order
    npin = len(prefix)
    full = (1 << n) - 1

    def descend(i: int, cands: list[int]) -> bool:
        if i == p:
            return True
        a = order[i]
        if i < npin:
            pool = 1 << prefix[i]
        else:
            pool = full & ~forbidden
            for x in earlier[i]:
                pool &= nbr[base[x]]
        for w in placed:
            pool &= ~(1 << w)
        need = pdeg[a]
        for w in _bits(pool):
            if hdeg[w] < need:
                continue
            iw = inc[w]
            nxt = []
            ok = True
            for c in cands:
                c &= ~iw
                if not c:
                    ok = False
                    break
                nxt.append(c)
            if not ok:
                continue
            for x in earlier[i]:
                wx = base[x]
                c = iw & inc[wx]
                for y in placed:
                    if y != wx:
                        c &= ~inc[y]
                if not c:
                    ok = False
                    break
                nxt.append(c)
            if not ok:
                continue
            base[a] = w
            placed.append(w)
            if descend(i + 1, nxt):
                return True
            placed.pop()
            base[a] = -1
        return False

    if descend(0, []):
        return tuple(base)
    return None


def trace_search_through(
    n: int,
    masks: Sequence[int],
    p: int,
    pattern_edges: Sequence[tuple[int, int]],
    order: Sequence[int],
    edge_mask: int,
) -> Optional[tuple[int, ...]]:
    """Find a trace in which the edge ``edge_mask`` realises some pattern edge.

    For each pattern edge ``(a, b)`` in turn and each ordered pair ``(x, y)``
    of the edge's vertices, ``a`` and ``b`` are pinned to ``x`` and ``y`` and
    the edge's other vertices are kept out of the base set.
    """
    evs = list(_bits(edge_mask))
    for a, b in pattern_edges:
        order2 = [a, b] + [v for v in order if v != a and v != b]
        for x in evs:
            for y in evs:
                if x == y:
                    continue
                got = trace_search(
                    n, masks, p, pattern_edges, order2, (x, y), edge_mask & ~((1 << x) | (1 << y))
                )
                if got is not None:
                    return got
    return None


def drep_search(masks: Sequence[int], k: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Least ``k`` member indices (lexicographic) whose sets all own a private element.

    Returns ``(indices, representatives)`` with each representative the least
    private element of its member, or ``None``.
    """
    m = len(masks)
    if k <= 0:
        return (), ()
    if k > m:
        return None
    chosen: list[int] = []

    def residues(sel: list[int]) -> Optional[list[int]]:
        s = len(sel)
        pre = [0] * (s + 1)
        for j in range(s):
            pre[j + 1] = pre[j] | masks[sel[j]]
        suf = 0
        out = [0] * s
        for j in range(s - 1, -1, -1):
            res = masks[sel[j]] & ~(pre[j] | suf)
            if not res:
                return None
            out[j] = res
            suf |= masks[sel[j]]
        return out

    def descend(start: int) -> Optional[list[int]]:
        if len(chosen) == k:
            return residues(chosen)
        for i in range(start, m - (k - len(chosen)) + 1):
            chosen.append(i)
            if residues(chosen) is not None:
                got = descend(i + 1)
                if got is not None:
                    return got
            chosen.pop()
        return None

    res = descend(0)
    if res is None:
        return None
    reps = tuple((r & -r).bit_length() - 1 for r in res)
    return tuple(chosen), reps


def cover_search(
    nsets: int,
    block_cover: Sequence[int],
    set_blocks: Sequence[Sequence[int]],
    size: int,
    per_block: int,
    budget: int = 0,
    fix_first: bool = True,
    point_sets: Sequence[int] = (),
    per_point: int = 0,
    k: int = 0,
) -> tuple[Optional[list[int]], int]:
    """Find at most ``size`` blocks covering all ``nsets`` subsets once.

    ``block_cover[b]`` is the bitmask of subset indices block ``b`` covers and
    ``set_blocks[s]`` lists the blocks containing subset ``s`` in lexicographic
    order. Branches on the least uncovered subset. With ``fix_first`` the
    first block is pinned to block 0, valid when block 0 is the lexicographically
    least block and contains subset 0 (point relabelling). When ``point_sets``
    (per point, the mask of subsets containing it) is given, a node is cut if
    the points' residual needs ``ceil(u_x / per_point)`` cannot be met by
    ``left`` blocks of ``k`` points each. Returns the chosen
    block indices (or ``None``) and the node count; raises
    :class:`BudgetExhausted` when ``budget`` (>0) nodes are exceeded.
    """
    nodes = 0
    chosen: list[int] = []

    def descend(uncovered: int, left: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget and nodes > budget:
            raise BudgetExhausted(nodes)
        if not uncovered:
            return True
        if left == 0 or uncovered.bit_count() > left * per_block:
            return False
        if point_sets:
            total = 0
            for pm in point_sets:
                u = (uncovered & pm).bit_count()
                if u:
                    need = -(-u // per_point)
                    if need > left:
                        return False
                    total += need
            if total > left * k:
                return False
        s = (uncovered & -uncovered).bit_length() - 1
        options = set_blocks[s]
        if fix_first and not chosen and s == 0:
            options = options[:1]
        for b in options:
            chosen.append(b)
            if descend(uncovered & ~block_cover[b], left - 1):
                return True
            chosen.pop()
        return False

    full = (1 << nsets) - 1
    if descend(full, size):
        return list(chosen), nodes
    return None, nodes
