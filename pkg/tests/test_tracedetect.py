import random
from itertools import combinations, permutations, product

import pytest
from hypothesis import given, settings, strategies as st

from hypertrace.hypercore import Hypergraph, mask_of
from hypertrace.tracedetect import (
    PatternGraph,
    TraceWitness,
    complete_graph,
    contains_star_trace,
    contains_trace,
    contains_trace_through,
    k2t,
    star,
    verify_witness,
)
from hypertrace.constructions import covering_star_free
from hypertrace.coverings import steiner_triple_system


def brute_trace(h, f):
    """Definition-level oracle: injective base map plus distinct admissible edges."""
    for base in permutations(range(h.n), f.p):
        w = mask_of(base)
        opts = []
        for a, b in f.edges:
            target = (1 << base[a]) | (1 << base[b])
            opts.append([i for i, m in enumerate(h.masks) if m & w == target])
        if any(not o for o in opts):
            continue
        for pick in product(*opts):
            if len(set(pick)) == len(pick):
                return True
    return False


def subgraph_oracle(h, f):
    edges = h.edge_set
    for img in permutations(range(h.n), f.p):
        if all(tuple(sorted((img[a], img[b]))) in edges for a, b in f.edges):
            return True
    return False


def random_hypergraph(rng, n, r, density):
    return Hypergraph(n, r, tuple(e for e in combinations(range(n), r) if rng.random() < density))


def random_pattern(rng, p):
    pairs = list(combinations(range(p), 2))
    edges = tuple(e for e in pairs if rng.random() < 0.5) or (pairs[0],)
    return PatternGraph(p, edges)


def test_pattern_presets():
    assert star(3).edges == ((0, 1), (0, 2), (0, 3)) and star(3).star_size() == 3
    f = k2t(2)
    assert f.p == 4 and f.q == 4 and f.star_size() is None
    assert complete_graph(4).q == 6
    assert star(4).search_order()[0] == 0


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 1), (1, 0)), ((0, 5),)])
def test_pattern_rejects(edges):
    with pytest.raises(ValueError):
        PatternGraph(3, edges)


def test_pattern_round_trip():
    f = k2t(3)
    assert PatternGraph.from_dict(f.to_dict()) == f


def test_k12_example(backend):
    h = Hypergraph(5, 3, ((0, 1, 2), (0, 3, 4)))
    w = contains_trace(h, star(2))
    assert w == TraceWitness((0, 1, 3), ((0, 1, 2), (0, 3, 4)))
    assert verify_witness(h, star(2), w)


def test_too_few_edges(backend):
    h = Hypergraph(6, 3, ((0, 1, 2), (3, 4, 5)))
    assert contains_trace(h, star(3)) is None
    assert contains_trace(h, complete_graph(3)) is None


def test_single_edge_k2(backend):
    h = Hypergraph(3, 3, ((0, 1, 2),))
    w = contains_trace(h, complete_graph(2))
    assert w.base == (0, 1) and w.assignment == ((0, 1, 2),)


def test_star_examples(backend):
    h = covering_star_free(7, 3, 5, steiner_triple_system(7)).hypergraph
    assert h.num_edges == 28
    assert contains_star_trace(h, 5) is None
    assert contains_trace(h, star(5)) is None
    k7 = Hypergraph.complete(7, 3)
    w = contains_star_trace(k7, 5)
    assert w is not None and verify_witness(k7, star(5), w)
    assert contains_star_trace(Hypergraph(3, 3, ((0, 1, 2),)), 2) is None


def test_verify_witness_rejects_bad():
    h = Hypergraph(5, 3, ((0, 1, 2), (0, 3, 4)))
    f = star(2)
    assert not verify_witness(h, f, TraceWitness((0, 1, 2), ((0, 1, 2), (0, 3, 4))))
    assert not verify_witness(h, f, TraceWitness((0, 1, 3), ((0, 1, 2), (0, 1, 2))))
    assert not verify_witness(h, f, TraceWitness((0, 1, 3), ((0, 1, 2), (1, 2, 3))))


def test_through_finds_only_traces_using_edge(backend):
    h = Hypergraph(6, 3, ((0, 1, 2), (0, 3, 4)))
    assert contains_trace_through(h, star(2), (0, 1, 2)) is not None
    h2 = Hypergraph(7, 3, ((0, 1, 2), (0, 3, 4), (4, 5, 6)))
    w = contains_trace_through(h2, star(2), (4, 5, 6))
    assert w is not None and (4, 5, 6) in w.assignment


@st.composite
def instances(draw, max_n=7, max_p=5):
    r = draw(st.sampled_from([2, 3, 4]))
    n = draw(st.integers(min_value=r, max_value=max_n))
    all_edges = list(combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=min(len(all_edges), 12)))
    p = draw(st.integers(min_value=2, max_value=min(max_p, n)))
    pairs = list(combinations(range(p), 2))
    fe = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1, max_size=min(len(pairs), 5)))
    return Hypergraph(n, r, tuple(edges)), PatternGraph(p, tuple(fe))


@settings(max_examples=250, deadline=None)
@given(instances())
def test_detector_matches_definition(inst):
    h, f = inst
    w = contains_trace(h, f)
    assert (w is not None) == brute_trace(h, f)
    if w is not None:
        assert verify_witness(h, f, w)


@settings(max_examples=200, deadline=None)
@given(instances(max_n=9), st.integers(1, 4))
def test_star_detector_equivalent(inst, t):
    h, _ = inst
    ws = contains_star_trace(h, t)
    wg = contains_trace(h, star(t))
    assert (ws is None) == (wg is None)
    if ws is not None:
        assert verify_witness(h, star(t), ws)


@settings(max_examples=150, deadline=None)
@given(instances(), st.data())
def test_monotone_under_adding_edges(inst, data):
    h, f = inst
    if contains_trace(h, f) is None:
        return
    extra = [e for e in combinations(range(h.n), h.r) if e not in h.edge_set]
    add = data.draw(st.lists(st.sampled_from(extra), unique=True)) if extra else []
    assert contains_trace(h.with_edges(h.edges + tuple(add)), f) is not None


def test_graph_case_matches_subgraph_oracle(backend):
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(2, 7)
        h = random_hypergraph(rng, n, 2, rng.random())
        f = random_pattern(rng, rng.randint(2, min(4, n)))
        assert (contains_trace(h, f) is not None) == subgraph_oracle(h, f)


def test_through_agrees_with_difference(backend):
    # a trace through e exists iff h has a trace and h - e does not, when h - e is trace-free
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(4, 7)
        r = rng.choice([2, 3])
        h = random_hypergraph(rng, n, r, 0.4)
        if not h.edges:
            continue
        f = random_pattern(rng, rng.randint(2, 4))
        e = rng.choice(h.edges)
        w = contains_trace_through(h, f, e)
        if w is not None:
            assert e in w.assignment and verify_witness(h, f, w)
        rest = h.with_edges(x for x in h.edges if x != e)
        if contains_trace(rest, f) is None:
            assert (w is not None) == (contains_trace(h, f) is not None)


def test_backends_return_identical_witnesses():
    from hypertrace import kernels

    if "cython" not in kernels.available_backends():
        pytest.skip("compiled kernels not built")
    rng = random.Random(3)
    prev = kernels.backend()
    try:
        for _ in range(200):
            n = rng.randint(3, 9)
            r = rng.choice([2, 3, 4])
            if r > n:
                continue
            h = random_hypergraph(rng, n, r, rng.random() * 0.6)
            f = random_pattern(rng, rng.randint(2, min(5, n)))
            t = rng.randint(1, 4)
            got = []
            for name in ("python", "cython"):
                kernels.set_backend(name)
                got.append((contains_trace(h, f), contains_star_trace(h, t)))
            assert got[0] == got[1]
    finally:
        kernels.set_backend(prev)


def test_wide_host_uses_fallback():
    n = 70
    h = Hypergraph(n, 2, ((0, 69), (0, 68), (1, 2)))
    w = contains_trace(h, star(2))
    assert w is not None and w.base[0] == 0
