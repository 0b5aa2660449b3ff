from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hypertrace.repfamily import (
    SearchBudgetError,
    SetFamily,
    brute_force_f,
    build_frankl_pach_2k,
    build_frankl_pach_r3,
    f_bounds,
    f_exact,
    find_disjointly_representable,
)


def representable_oracle(members, k):
    """Some k members each keep a point outside the union of the other k-1."""
    for sub in combinations(members, k):
        if all(set(s) - set().union(*(x for j, x in enumerate(sub) if j != i)) for i, s in enumerate(sub)):
            return True
    return False


def test_four_cycle(backend):
    fam = SetFamily(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
    assert find_disjointly_representable(fam, 3) is None


def test_disjoint_sets(backend):
    fam = SetFamily(6, ((0, 1), (2, 3), (4, 5)))
    assert find_disjointly_representable(fam, 3) == ((0, 1, 2), (0, 2, 4))


def test_fp_r3_example(backend):
    fam = build_frankl_pach_r3(3)
    assert len(fam) == 6 and fam.m == 5
    assert find_disjointly_representable(fam, 3) is None


def test_fp_r3_small_cases():
    assert (len(build_frankl_pach_r3(2)), build_frankl_pach_r3(2).m) == (4, 4)
    assert len(build_frankl_pach_r3(1)) == 2


@pytest.mark.parametrize("k, edges, verts", [(3, 4, 4), (5, 12, 6), (2, 1, 3)])
def test_fp_2k_examples(k, edges, verts):
    fam = build_frankl_pach_2k(k)
    assert (len(fam), fam.m) == (edges, verts)


def test_fp_2k_k3_is_c4():
    assert build_frankl_pach_2k(3).members == ((0, 2), (0, 3), (1, 2), (1, 3))


def test_f_bounds_examples():
    assert f_bounds(2, 5).exact == 12
    assert f_bounds(3, 3).exact == 6
    fb = f_bounds(3, 4)
    assert fb.upper == 20 and fb.exact is None


def test_brute_force_examples():
    assert brute_force_f(2, 3, 5) == 4
    assert brute_force_f(2, 4, 6) == 7
    assert brute_force_f(1, 2, 3) == 1


def test_brute_force_guard():
    with pytest.raises(SearchBudgetError):
        brute_force_f(3, 3, 9)


@pytest.mark.parametrize("r", range(1, 6))
def test_fp_r3_size_and_maximal(r, backend):
    fam = build_frankl_pach_r3(r)
    assert len(fam) == ((r + 2) // 2) * ((r + 3) // 2) == f_exact(r, 3)
    assert find_disjointly_representable(fam, 3) is None
    present = set(fam.members)
    for extra in combinations(range(fam.m), r):
        if extra not in present:
            bigger = SetFamily(fam.m, fam.members + (extra,))
            assert find_disjointly_representable(bigger, 3) is not None


@pytest.mark.parametrize("k", range(2, 7))
def test_fp_2k_size_and_free(k, backend):
    fam = build_frankl_pach_2k(k)
    assert len(fam) == comb(k + 1, 2) - (k + 2) // 2 == f_exact(2, k)
    assert find_disjointly_representable(fam, k) is None
    assert not representable_oracle(fam.members, k)


def test_brute_force_matches_exact():
    for k in range(2, 5):
        assert brute_force_f(2, k, k + 1) == f_exact(2, k)
    for r in (1, 2):
        assert brute_force_f(r, 3, r + 2) == f_exact(r, 3)


@st.composite
def families(draw):
    m = draw(st.integers(1, 7))
    size = draw(st.integers(1, m))
    subsets = list(combinations(range(m), size))
    members = draw(st.lists(st.sampled_from(subsets), unique=True, max_size=10))
    return SetFamily(m, tuple(members))


@settings(max_examples=250, deadline=None)
@given(families(), st.integers(1, 4))
def test_search_matches_oracle(fam, k):
    got = find_disjointly_representable(fam, k)
    assert (got is not None) == representable_oracle(fam.members, k)
    if got is not None:
        idx, reps = got
        assert list(idx) == sorted(idx) and len(idx) == k
        chosen = [fam.members[i] for i in idx]
        for i, (s, x) in enumerate(zip(chosen, reps)):
            others = set().union(*(c for j, c in enumerate(chosen) if j != i))
            assert x in s and x not in others
            assert x == min(set(s) - others)
        # lexicographically least index tuple
        for cand in combinations(range(len(fam)), k):
            if cand == idx:
                break
            assert not representable_oracle([fam.members[i] for i in cand], k)


@settings(max_examples=150, deadline=None)
@given(families(), st.integers(1, 4), st.data())
def test_anti_monotone(fam, k, data):
    if find_disjointly_representable(fam, k) is not None or not fam.members:
        return
    keep = data.draw(st.lists(st.sampled_from(range(len(fam))), unique=True))
    sub = SetFamily(fam.m, tuple(fam.members[i] for i in sorted(keep)))
    assert find_disjointly_representable(sub, k) is None


def test_family_validation_and_round_trip():
    with pytest.raises(ValueError):
        SetFamily(3, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        SetFamily(3, ((0, 3),))
    SetFamily(3, ((0, 1), (1, 0)), allow_duplicates=True)
    fam = build_frankl_pach_r3(3)
    assert SetFamily.from_dict(fam.to_dict()) == fam
    with pytest.raises(ValueError):
        find_disjointly_representable(fam, 0)
