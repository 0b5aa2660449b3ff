# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; mirrors ``_pykernels`` result for result.

Hosts are limited to 64 vertices (one machine word per vertex set).
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy

from hypertrace._pykernels import BudgetExhausted


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popc(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) noexcept nogil:
    return __builtin_ctzll(x)


MAX_VERTICES = 64


# ---------------------------------------------------------------- trace search

ctypedef struct TraceCtx:
    int n
    int p
    int q
    int npin
    uint64_t full
    uint64_t forbidden
    uint64_t* masks
    int* inc_start
    int* inc_list
    uint64_t* nbr
    int* hdeg
    int* pdeg
    int* order
    int* prefix
    int* base
    int* ea
    int* eb
    int* lo
    int* anch_list
    int* anch_cnt
    int* ptr


cdef int _scan(TraceCtx* c, int v, int j, uint64_t wmask, uint64_t target) noexcept nogil:
    cdef int s = c.inc_start[v]
    cdef int end = c.inc_start[v + 1]
    while s + j < end:
        if (c.masks[c.inc_list[s + j]] & wmask) == target:
            return j
        j += 1
    return -1


cdef int _descend(TraceCtx* c, int i, uint64_t wmask) noexcept nogil:
    cdef int a, w, idx, e, j, v, ok, f
    cdef uint64_t pool, wn, bit, target
    if i == c.p:
        return 1
    a = c.order[i]
    if i < c.npin:
        pool = (<uint64_t>1) << c.prefix[i]
    else:
        pool = c.full & ~c.forbidden
        for idx in range(c.anch_cnt[i], c.anch_cnt[i + 1]):
            pool &= c.nbr[c.base[c.lo[c.anch_list[idx]]]]
    pool &= ~wmask
    while pool:
        w = ctz(pool)
        bit = (<uint64_t>1) << w
        pool &= pool - 1
        if c.hdeg[w] < c.pdeg[a]:
            continue
        wn = wmask | bit
        ok = 1
        for idx in range(c.anch_cnt[i]):
            e = c.anch_list[idx]
            j = c.ptr[i * c.q + e]
            v = c.base[c.ea[e]] if c.lo[e] == c.eb[e] else c.base[c.eb[e]]
            f = c.inc_list[c.inc_start[v] + j]
            if c.masks[f] & bit:
                target = ((<uint64_t>1) << c.base[c.ea[e]]) | ((<uint64_t>1) << c.base[c.eb[e]])
                j = _scan(c, v, j + 1, wn, target)
                if j < 0:
                    ok = 0
                    break
            c.ptr[(i + 1) * c.q + e] = j
        if not ok:
            continue
        c.base[a] = w
        for idx in range(c.anch_cnt[i], c.anch_cnt[i + 1]):
            e = c.anch_list[idx]
            target = ((<uint64_t>1) << c.base[c.ea[e]]) | ((<uint64_t>1) << c.base[c.eb[e]])
            j = _scan(c, w, 0, wn, target)
            if j < 0:
                ok = 0
                break
            c.ptr[(i + 1) * c.q + e] = j
        if ok and _descend(c, i + 1, wn):
            return 1
        c.base[a] = -1
    return 0


cdef void _ctx_free(TraceCtx* c):
    free(c.masks)
    free(c.inc_start)
    free(c.inc_list)
    free(c.nbr)
    free(c.hdeg)
    free(c.pdeg)
    free(c.order)
    free(c.prefix)
    free(c.base)
    free(c.ea)
    free(c.eb)
    free(c.lo)
    free(c.anch_list)
    free(c.anch_cnt)
    free(c.ptr)


cdef void _ctx_alloc(TraceCtx* c, int n, masks, int p, pattern_edges) except *:
    cdef int m = len(masks)
    cdef int q = len(pattern_edges)
    cdef int i, v, a, b, e
    cdef uint64_t em
    c.n = n
    c.p = p
    c.q = q
    c.npin = 0
    c.full = (<uint64_t>0xFFFFFFFFFFFFFFFF) if n == 64 else (((<uint64_t>1) << n) - 1)
    c.forbidden = 0
    c.masks = <uint64_t*>malloc((m + 1) * sizeof(uint64_t))
    c.inc_start = <int*>calloc(n + 2, sizeof(int))
    c.nbr = <uint64_t*>calloc(n + 1, sizeof(uint64_t))
    c.hdeg = <int*>calloc(n + 1, sizeof(int))
    c.pdeg = <int*>calloc(p + 1, sizeof(int))
    c.order = <int*>malloc((p + 1) * sizeof(int))
    c.prefix = <int*>malloc((p + 1) * sizeof(int))
    c.base = <int*>malloc((p + 1) * sizeof(int))
    c.ea = <int*>malloc((q + 1) * sizeof(int))
    c.eb = <int*>malloc((q + 1) * sizeof(int))
    c.lo = <int*>malloc((q + 1) * sizeof(int))
    c.anch_list = <int*>malloc((q + 1) * sizeof(int))
    c.anch_cnt = <int*>calloc(p + 2, sizeof(int))
    c.ptr = <int*>calloc((p + 1) * (q + 1), sizeof(int))
    total = 0
    for i in range(m):
        em = <uint64_t>masks[i]
        c.masks[i] = em
        total += popc(em)
        while em:
            v = ctz(em)
            em &= em - 1
            c.hdeg[v] += 1
            c.nbr[v] |= c.masks[i]
    c.inc_list = <int*>malloc((total + 1) * sizeof(int))
    cdef int* cursor = <int*>malloc((n + 1) * sizeof(int))
    for v in range(n):
        c.nbr[v] &= ~((<uint64_t>1) << v)
        c.inc_start[v + 1] = c.inc_start[v] + c.hdeg[v]
        cursor[v] = c.inc_start[v]
    for i in range(m):
        em = c.masks[i]
        while em:
            v = ctz(em)
            em &= em - 1
            c.inc_list[cursor[v]] = i
            cursor[v] += 1
    free(cursor)
    for e in range(q):
        a, b = pattern_edges[e]
        c.ea[e] = a
        c.eb[e] = b
        c.pdeg[a] += 1
        c.pdeg[b] += 1


cdef void _ctx_order(TraceCtx* c, int* order) noexcept:
    # bucket pattern edges by the depth at which they become anchored
    cdef int i, e, k
    cdef int* pos = <int*>malloc((c.p + 1) * sizeof(int))
    cdef int* cursor = <int*>malloc((c.p + 1) * sizeof(int))
    for i in range(c.p):
        c.order[i] = order[i]
        pos[order[i]] = i
        c.base[i] = -1
    for i in range(c.p + 2):
        c.anch_cnt[i] = 0
    for e in range(c.q):
        c.lo[e] = c.ea[e] if pos[c.ea[e]] < pos[c.eb[e]] else c.eb[e]
        k = pos[c.eb[e]] if pos[c.ea[e]] < pos[c.eb[e]] else pos[c.ea[e]]
        c.anch_cnt[k + 1] += 1
    for i in range(c.p):
        c.anch_cnt[i + 1] += c.anch_cnt[i]
    for i in range(c.p):
        cursor[i] = c.anch_cnt[i]
    for e in range(c.q):
        k = pos[c.eb[e]] if c.lo[e] == c.ea[e] else pos[c.ea[e]]
        c.anch_list[cursor[k]] = e
        cursor[k] += 1
    free(pos)
    free(cursor)


def trace_search(int n, masks, int p, pattern_edges, order, prefix=(), forbidden=0):
    """See ``_pykernels.trace_search``."""
    cdef TraceCtx c
    cdef int i, found
    if n > 64:
        raise ValueError("compiled trace search supports at most 64 vertices")
    if len(pattern_edges) > len(masks) or p > n:
        return None
    _ctx_alloc(&c, n, masks, p, pattern_edges)
    try:
        for i in range(p):
            c.prefix[i] = order[i]
        _ctx_order(&c, c.prefix)
        c.npin = len(prefix)
        for i in range(c.npin):
            c.prefix[i] = prefix[i]
        c.forbidden = <uint64_t>forbidden
        with nogil:
            found = _descend(&c, 0, 0)
        if found:
            return tuple(c.base[i] for i in range(p))
        return None
    finally:
        _ctx_free(&c)


def trace_search_through(int n, masks, int p, pattern_edges, order, edge_mask):
    """See ``_pykernels.trace_search_through``."""
    cdef TraceCtx c
    cdef int i, j, e, x, y, found = 0
    cdef uint64_t emask = <uint64_t>edge_mask
    cdef uint64_t xs, ys
    if n > 64:
        raise ValueError("compiled trace search supports at most 64 vertices")
    if len(pattern_edges) > len(masks) or p > n:
        return None
    _ctx_alloc(&c, n, masks, p, pattern_edges)
    cdef int* ord2 = <int*>malloc((p + 1) * sizeof(int))
    try:
        for e in range(c.q):
            ord2[0] = c.ea[e]
            ord2[1] = c.eb[e]
            j = 2
            for i in range(p):
                if order[i] != c.ea[e] and order[i] != c.eb[e]:
                    ord2[j] = order[i]
                    j += 1
            _ctx_order(&c, ord2)
            c.npin = 2
            xs = emask
            while xs and not found:
                x = ctz(xs)
                xs &= xs - 1
                ys = emask
                while ys:
                    y = ctz(ys)
                    ys &= ys - 1
                    if x == y:
                        continue
                    c.prefix[0] = x
                    c.prefix[1] = y
                    c.forbidden = emask & ~(((<uint64_t>1) << x) | ((<uint64_t>1) << y))
                    with nogil:
                        found = _descend(&c, 0, 0)
                    if found:
                        break
            if found:
                return tuple(c.base[i] for i in range(p))
        return None
    finally:
        free(ord2)
        _ctx_free(&c)


# ------------------------------------------------ disjointly representable sets

cdef int _drep_descend(uint64_t* masks, int m, int k, int* chosen, int depth,
                       int start, uint64_t* pre) noexcept nogil:
    cdef int i, j
    cdef uint64_t suf, mk
    for i in range(start, m - (k - depth) + 1):
        chosen[depth] = i
        pre[depth + 1] = pre[depth] | masks[i]
        suf = 0
        mk = 1
        for j in range(depth, -1, -1):
            if not (masks[chosen[j]] & ~(pre[j] | suf)):
                mk = 0
                break
            suf |= masks[chosen[j]]
        if not mk:
            continue
        if depth + 1 == k:
            return 1
        if _drep_descend(masks, m, k, chosen, depth + 1, i + 1, pre):
            return 1
    return 0


def drep_search(masks, int k):
    """See ``_pykernels.drep_search``."""
    cdef int m = len(masks)
    cdef int i, j, found
    cdef uint64_t suf, res
    if k <= 0:
        return (), ()
    if k > m:
        return None
    for x in masks:
        if x >> 64:
            raise ValueError("compiled search supports universes of at most 64 points")
    cdef uint64_t* cm = <uint64_t*>malloc(m * sizeof(uint64_t))
    cdef int* chosen = <int*>malloc(k * sizeof(int))
    cdef uint64_t* pre = <uint64_t*>calloc(k + 1, sizeof(uint64_t))
    try:
        for i in range(m):
            cm[i] = <uint64_t>masks[i]
        with nogil:
            found = _drep_descend(cm, m, k, chosen, 0, 0, pre)
        if not found:
            return None
        idx = tuple(chosen[i] for i in range(k))
        reps = []
        for i in range(k):
            suf = 0
            for j in range(k):
                if j != i:
                    suf |= cm[chosen[j]]
            res = cm[chosen[i]] & ~suf
            reps.append(ctz(res))
        return idx, tuple(reps)
    finally:
        free(cm)
        free(chosen)
        free(pre)


# ------------------------------------------------------------- covering search

ctypedef struct CoverCtx:
    int words
    int per_block
    int fix_first
    long long budget
    long long nodes
    uint64_t* cover      # nblocks * words
    int* sb_start
    int* sb_list
    uint64_t* stack      # (size + 1) * words
    int* chosen
    int npoints
    int per_point
    int k
    uint64_t* point_sets # npoints * words


cdef int _cover_descend(CoverCtx* c, int depth, int left) noexcept nogil:
    cdef uint64_t* cur = c.stack + depth * c.words
    cdef uint64_t* nxt = c.stack + (depth + 1) * c.words
    cdef int w, cnt = 0, s = -1, idx, end, b, r
    c.nodes += 1
    if c.budget > 0 and c.nodes > c.budget:
        return -1
    for w in range(c.words):
        if cur[w]:
            cnt += popc(cur[w])
            if s < 0:
                s = w * 64 + ctz(cur[w])
    if cnt == 0:
        return 1
    if left == 0 or cnt > left * c.per_block:
        return 0
    cdef int x, u, need, total = 0
    for x in range(c.npoints):
        u = 0
        for w in range(c.words):
            u += popc(cur[w] & c.point_sets[x * c.words + w])
        if u:
            need = (u + c.per_point - 1) // c.per_point
            if need > left:
                return 0
            total += need
    if c.npoints and total > left * c.k:
        return 0
    end = c.sb_start[s + 1]
    if c.fix_first and depth == 0 and s == 0:
        end = c.sb_start[s] + 1
    for idx in range(c.sb_start[s], end):
        b = c.sb_list[idx]
        for w in range(c.words):
            nxt[w] = cur[w] & ~c.cover[b * c.words + w]
        c.chosen[depth] = b
        r = _cover_descend(c, depth + 1, left - 1)
        if r != 0:
            return r
    return 0


def cover_search(int nsets, block_cover, set_blocks, int size, int per_block,
                 long long budget=0, bint fix_first=True, point_sets=(), int per_point=0,
                 int k=0):
    """See ``_pykernels.cover_search``."""
    cdef CoverCtx c
    cdef int nb = len(block_cover)
    cdef int words = (nsets + 63) // 64
    cdef int b, w, s, total, i, r
    if words == 0:
        words = 1
    c.words = words
    c.per_block = per_block
    c.fix_first = fix_first
    c.budget = budget
    c.nodes = 0
    total = 0
    for blist in set_blocks:
        total += len(blist)
    c.cover = <uint64_t*>calloc(nb * words + 1, sizeof(uint64_t))
    c.sb_start = <int*>calloc(nsets + 2, sizeof(int))
    c.sb_list = <int*>malloc((total + 1) * sizeof(int))
    c.stack = <uint64_t*>calloc((size + 2) * words, sizeof(uint64_t))
    c.chosen = <int*>malloc((size + 1) * sizeof(int))
    c.npoints = len(point_sets)
    c.per_point = per_point if per_point > 0 else 1
    c.k = k
    c.point_sets = <uint64_t*>calloc(c.npoints * words + 1, sizeof(uint64_t))
    try:
        for x in range(c.npoints):
            pm = point_sets[x]
            for w in range(words):
                c.point_sets[x * words + w] = <uint64_t>((pm >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        for b in range(nb):
            bc = block_cover[b]
            for w in range(words):
                c.cover[b * words + w] = <uint64_t>((bc >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
        i = 0
        for s in range(nsets):
            c.sb_start[s] = i
            for b in set_blocks[s]:
                c.sb_list[i] = b
                i += 1
        c.sb_start[nsets] = i
        for s in range(nsets):
            c.stack[s // 64] |= (<uint64_t>1) << (s % 64)
        with nogil:
            r = _cover_descend(&c, 0, size)
        if r < 0:
            raise BudgetExhausted(c.nodes)
        if r == 1:
            # depth reached equals number of chosen blocks; recover it from the stack
            chosen = []
            for i in range(size + 1):
                empty = True
                for w in range(words):
                    if c.stack[i * words + w]:
                        empty = False
                        break
                if empty:
                    break
                chosen.append(c.chosen[i])
            return chosen, c.nodes
        return None, c.nodes
    finally:
        free(c.cover)
        free(c.sb_start)
        free(c.sb_list)
        free(c.stack)
        free(c.chosen)
        free(c.point_sets)
