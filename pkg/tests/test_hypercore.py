import json
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hypertrace.hypercore import (
    DuplicateEdgeError,
    EdgeSizeError,
    Hypergraph,
    MalformedInputError,
    VertexRangeError,
    bits,
    codegree,
    codegrees,
    mask_of,
    neighborhoods,
    parse_hypergraph,
    serialize_hypergraph,
    split_codegree_one,
)


@st.composite
def hypergraphs(draw, max_n=8, rs=(2, 3, 4)):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(min_value=r, max_value=max_n))
    all_edges = list(combinations(range(n), r))
    chosen = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=len(all_edges)))
    return Hypergraph(n, r, tuple(chosen))


def test_parse_minimal():
    h = parse_hypergraph('{"n":4,"r":3,"edges":[[0,1,2]]}')
    assert h.num_edges == 1 and h.edges == ((0, 1, 2),)


def test_parse_duplicate_after_sorting():
    with pytest.raises(DuplicateEdgeError):
        parse_hypergraph('{"n":4,"r":3,"edges":[[2,1,0],[0,1,2]]}')


def test_parse_vertex_out_of_range():
    with pytest.raises(VertexRangeError):
        parse_hypergraph('{"n":3,"r":3,"edges":[[0,1,3]]}')


@pytest.mark.parametrize(
    "text, exc",
    [
        ("not json", MalformedInputError),
        ('{"n":4,"r":3}', MalformedInputError),
        ('{"n":4,"r":3,"edges":[[0,1]]}', EdgeSizeError),
        ('{"n":4,"r":3,"edges":[[0,0,1]]}', EdgeSizeError),
        ('{"n":4,"r":1,"edges":[]}', MalformedInputError),
        ('[1,2]', MalformedInputError),
    ],
)
def test_parse_rejects(text, exc):
    with pytest.raises(exc):
        parse_hypergraph(text)


def test_canonical_order():
    h = Hypergraph(5, 3, ((3, 4, 2), (1, 0, 2)))
    assert h.edges == ((0, 1, 2), (2, 3, 4))
    assert serialize_hypergraph(h) == '{"n": 5, "r": 3, "edges": [[0, 1, 2], [2, 3, 4]]}'


def test_masks_and_bits():
    assert mask_of([0, 3, 5]) == 0b101001
    assert bits(0b101001) == [0, 3, 5]
    h = Hypergraph(4, 2, ((0, 1), (1, 2)))
    assert h.masks == (0b11, 0b110)
    assert h.incidence == (0b01, 0b11, 0b10, 0)
    assert [h.degree(v) for v in range(4)] == [1, 2, 1, 0]


def test_codegree_examples():
    h = Hypergraph(4, 3, ((0, 1, 2), (0, 1, 3)))
    assert codegree(h, 0, 1) == 2
    assert codegree(h, 2, 3) == 0
    k4 = Hypergraph.complete(4, 3)
    assert all(codegree(k4, x, y) == 2 for x, y in combinations(range(4), 2))


def test_codegree_rejects_bad_vertices():
    h = Hypergraph(4, 3, ((0, 1, 2),))
    with pytest.raises(VertexRangeError):
        codegree(h, 0, 4)
    with pytest.raises(ValueError):
        codegree(h, 1, 1)


def test_split_examples():
    s = split_codegree_one(Hypergraph(4, 3, ((0, 1, 2), (0, 1, 3))))
    assert s.a_edges == ((0, 1, 2), (0, 1, 3)) and s.b_edges == ()
    k4 = Hypergraph.complete(4, 3)
    s = split_codegree_one(k4)
    assert s.a_edges == () and s.b_edges == k4.edges
    s = split_codegree_one(Hypergraph(3, 3, ((0, 1, 2),)))
    assert s.a_edges == ((0, 1, 2),) and s.b_edges == ()


def test_neighborhood_examples():
    assert neighborhoods(Hypergraph(5, 3, ((0, 1, 2), (2, 3, 4))), 0) == ({1, 2}, {3, 4})
    assert neighborhoods(Hypergraph(4, 3, ((0, 1, 2),)), 3) == (set(), set())
    assert neighborhoods(Hypergraph.complete(4, 3), 0) == ({1, 2, 3}, set())


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_codegree_symmetric_and_sums(h):
    total = 0
    for x, y in combinations(range(h.n), 2):
        c = codegree(h, x, y)
        assert c == codegree(h, y, x)
        total += c
    assert total == h.num_edges * (h.r * (h.r - 1) // 2)
    assert sum(codegrees(h).values()) == total


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_split_partitions(h):
    s = split_codegree_one(h)
    assert len(s.a_edges) + len(s.b_edges) == h.num_edges
    assert not set(s.a_edges) & set(s.b_edges)
    assert set(s.a_edges) | set(s.b_edges) == h.edge_set


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_round_trip(h):
    text = serialize_hypergraph(h)
    assert parse_hypergraph(text) == h
    assert serialize_hypergraph(parse_hypergraph(text)) == text
    assert json.loads(text) == h.to_dict()


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.data())
def test_neighborhoods_disjoint(h, data):
    v = data.draw(st.integers(0, h.n - 1))
    n1, n2 = neighborhoods(h, v)
    assert not n1 & n2 and v not in n1 and v not in n2
    # brute-force distances
    adj = {x: set() for x in range(h.n)}
    for e in h.edges:
        for x in e:
            adj[x] |= set(e) - {x}
    assert n1 == adj[v]
    assert n2 == set().union(set(), *(adj[u] for u in n1)) - n1 - {v}
