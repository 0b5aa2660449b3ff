"""Disjointly representable subfamilies and the extremal function f(r, k).

``f(r, k)`` is the largest size of an r-uniform family with no ``k`` members
that each own an element outside the union of the others.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from . import kernels
from .hypercore import MalformedInputError, mask_of


class SearchBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class SetFamily:
    m: int
    members: tuple[tuple[int, ...], ...]
    allow_duplicates: bool = False

    def __post_init__(self) -> None:
        canon = tuple(tuple(sorted(s)) for s in self.members)
        for s in canon:
            if len(set(s)) != len(s):
                raise ValueError(f"member {list(s)} repeats a point")
            if s and (s[0] < 0 or s[-1] >= self.m):
                raise ValueError(f"member {list(s)} not inside 0..{self.m - 1}")
        if not self.allow_duplicates and len(set(canon)) != len(canon):
            raise ValueError("duplicate members")
        object.__setattr__(self, "members", canon)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def masks(self) -> list[int]:
        return [mask_of(s) for s in self.members]

    def to_dict(self) -> dict:
        return {"m": self.m, "members": [list(s) for s in self.members]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: object) -> "SetFamily":
        if not isinstance(obj, dict) or not {"m", "members"} <= obj.keys():
            raise MalformedInputError('expected an object with keys "m", "members"')
        return cls(int(obj["m"]), tuple(tuple(int(x) for x in s) for s in obj["members"]))


def find_disjointly_representable(
    fam: SetFamily, k: int
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Lexicographically least ``k`` member indices that are disjointly representable.

    Returns ``(indices, representatives)`` where each representative is the
    least point private to its member, or ``None`` when no such subfamily
    exists. Partial selections are abandoned as soon as one member is covered
    by the others, since adding members never helps.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return kernels.drep_search(fam.masks, k)


def build_frankl_pach_r3(r: int) -> SetFamily:
    """All r-sets of ``A | B`` missing exactly one point of A and one of B."""
    if r < 1:
        raise ValueError("r must be at least 1")
    a = (r + 2) // 2
    b = (r + 3) // 2
    pts = range(a + b)
    members = sorted(
        tuple(x for x in pts if x not in (i, j)) for i in range(a) for j in range(a, a + b)
    )
    return SetFamily(a + b, tuple(members))


def build_frankl_pach_2k(k: int) -> SetFamily:
    """``K_{k+1}`` with ``ceil((k+1)/2)`` edges removed, as disjoint as possible.

    Removes the matching ``{0,1}, {2,3}, ...``; for odd ``k+1`` the last
    vertex is covered by one more removed edge ``{k-1, k}``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    v = k + 1
    removed = {(i, i + 1) for i in range(0, v - 1, 2)}
    if v % 2:
        removed.add((v - 2, v - 1))
    members = tuple(e for e in combinations(range(v), 2) if e not in removed)
    return SetFamily(v, members)


@dataclass(frozen=True)
class FBounds:
    upper: int
    exact: Optional[int]


def f_exact(r: int, k: int) -> Optional[int]:
    if k == 3:
        return ((r + 2) // 2) * ((r + 3) // 2)
    if r == 2:
        return comb(k + 1, 2) - (k + 2) // 2
    return None


def f_bounds(r: int, k: int) -> FBounds:
    """General upper bound ``C(r+k-1, k-1)`` plus the exact value where known."""
    if r < 1 or k < 2:
        raise ValueError(f"need r >= 1 and k >= 2, got r={r}, k={k}")
    return FBounds(comb(r + k - 1, k - 1), f_exact(r, k))


def _representable(sub: tuple[int, ...]) -> bool:
    for i, s in enumerate(sub):
        others = 0
        for j, x in enumerate(sub):
            if j != i:
                others |= x
        if not s & ~others:
            return False
    return True


def brute_force_f(r: int, k: int, vmax: int, max_sets: int = 28) -> int:
    """Largest r-uniform family on ``vmax`` points without ``k`` representable members.

    Exhaustive include/exclude search over all r-subsets of ``range(vmax)``;
    families on fewer points are sub-cases. Representability is checked by
    plain enumeration of k-subsets, independent of the kernel search.
    """
    if r < 1 or k < 1 or vmax < 0:
        raise ValueError("need r >= 1, k >= 1, vmax >= 0")
    cands = [mask_of(c) for c in combinations(range(vmax), r)]
    if len(cands) > max_sets:
        raise SearchBudgetError(f"C({vmax},{r}) = {len(cands)} candidate sets exceeds {max_sets}")
    best = 0
    chosen: list[int] = []

    def descend(i: int) -> None:
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
        if i == len(cands) or len(chosen) + len(cands) - i <= best:
            return
        chosen.append(cands[i])
        # only subfamilies containing the new set can be newly representable
        if not any(
            _representable(sub + (cands[i],)) for sub in combinations(chosen[:-1], k - 1)
        ):
            descend(i + 1)
        chosen.pop()
        descend(i + 1)

    descend(0)
    return best
