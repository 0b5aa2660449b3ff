"""The compiled and pure-Python kernels must agree call for call."""
import random
from itertools import combinations
from math import comb

import pytest

from hypertrace import _pykernels, kernels
from hypertrace.hypercore import mask_of

ckernels = pytest.importorskip("hypertrace._ckernels")


def random_masks(rng, n, r, density):
    return [mask_of(e) for e in combinations(range(n), r) if rng.random() < density]


def random_pattern(rng, p):
    edges = [e for e in combinations(range(p), 2) if rng.random() < 0.5] or [(0, 1)]
    deg = [0] * p
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return edges, sorted(range(p), key=lambda v: (-deg[v], v))


def test_trace_search_agrees():
    rng = random.Random(1)
    for _ in range(400):
        n = rng.randint(2, 12)
        r = rng.randint(2, min(4, n))
        masks = random_masks(rng, n, r, rng.random() * 0.5)
        p = rng.randint(2, min(5, n))
        edges, order = random_pattern(rng, p)
        assert ckernels.trace_search(n, masks, p, edges, order) == _pykernels.trace_search(n, masks, p, edges, order)
        if masks:
            e = rng.choice(masks)
            assert ckernels.trace_search_through(n, masks, p, edges, order, e) == _pykernels.trace_search_through(
                n, masks, p, edges, order, e
            )


def test_trace_search_prefix_and_forbidden():
    rng = random.Random(2)
    for _ in range(200):
        n = rng.randint(4, 9)
        masks = random_masks(rng, n, 3, 0.5)
        edges, order = random_pattern(rng, 4)
        prefix = (rng.randrange(n),)
        forbidden = mask_of(rng.sample(range(n), 2)) & ~(1 << prefix[0])
        got = ckernels.trace_search(n, masks, 4, edges, order, prefix, forbidden)
        assert got == _pykernels.trace_search(n, masks, 4, edges, order, prefix, forbidden)
        if got is not None:
            assert got[order[0]] == prefix[0]
            assert not any(forbidden >> got[v] & 1 for v in order[1:])


def test_trace_search_full_width():
    n = 64
    masks = [mask_of((0, 63, 5)), mask_of((0, 62, 7)), mask_of((1, 2, 3))]
    edges, order = [(0, 1), (0, 2)], [0, 1, 2]
    got = ckernels.trace_search(n, masks, 3, edges, order)
    assert got == _pykernels.trace_search(n, masks, 3, edges, order) is not None


def test_drep_agrees():
    rng = random.Random(3)
    for _ in range(500):
        m = rng.randint(1, 12)
        masks = [rng.getrandbits(m) for _ in range(rng.randint(0, 9))]
        k = rng.randint(1, 5)
        assert ckernels.drep_search(masks, k) == _pykernels.drep_search(masks, k)


def test_drep_wide_masks_fall_back():
    masks = [1 << 70, 1 << 71, 3]
    assert kernels.drep_search(masks, 3) == _pykernels.drep_search(masks, 3) == ((0, 1, 2), (70, 71, 0))


def _cover_instance(v, k, t):
    tsets = list(combinations(range(v), t))
    index = {s: i for i, s in enumerate(tsets)}
    blocks = list(combinations(range(v), k))
    block_cover, set_blocks = [], [[] for _ in tsets]
    for bi, b in enumerate(blocks):
        m = 0
        for s in combinations(b, t):
            m |= 1 << index[s]
            set_blocks[index[s]].append(bi)
        block_cover.append(m)
    point_sets = [0] * v
    for i, s in enumerate(tsets):
        for x in s:
            point_sets[x] |= 1 << i
    return len(tsets), block_cover, set_blocks, comb(k, t), point_sets, comb(k - 1, t - 1)


@pytest.mark.parametrize("v,k,t,size", [(6, 3, 2, 5), (6, 3, 2, 6), (7, 3, 2, 7), (7, 4, 3, 12), (7, 4, 3, 11), (8, 4, 2, 6)])
def test_cover_search_agrees(v, k, t, size):
    ns, bc, sb, pb, ps, pp = _cover_instance(v, k, t)
    for with_points in (False, True):
        args = (ns, bc, sb, size, pb, 0, True, ps if with_points else (), pp if with_points else 0, k)
        assert ckernels.cover_search(*args) == _pykernels.cover_search(*args)


def test_cover_search_budget():
    ns, bc, sb, pb, ps, pp = _cover_instance(9, 5, 4)
    for impl in (ckernels, _pykernels):
        with pytest.raises(_pykernels.BudgetExhausted) as exc:
            impl.cover_search(ns, bc, sb, 28, pb, 50, True, ps, pp, 5)
        assert exc.value.nodes > 50


def test_backend_switching():
    prev = kernels.backend()
    try:
        kernels.set_backend("python")
        assert kernels.backend() == "python"
        kernels.set_backend("cython")
        assert kernels.backend() == "cython"
        with pytest.raises(ValueError):
            kernels.set_backend("fortran")
    finally:
        kernels.set_backend(prev)
