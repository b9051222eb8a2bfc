"""Two-generated subgroups, maximal subgroups and trapped-solution bounds.

Every subgroup of PSL(2,p) is generated by two elements, so for those
groups the pair closures give the complete list of proper subgroups.  For
other groups the list is whatever pair closures reach.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classes import ConjugacyClassTable, conjugacy_classes, count_product_solutions_direct
from .errors import InputError
from .groups import TABLE_LIMIT, FiniteGroup, closure_mask

SUBGROUP_LIMIT = TABLE_LIMIT


@dataclass(frozen=True)
class SubgroupRecord:
    members: tuple[int, ...]
    fingerprint: tuple[tuple[int, int], ...]  # (element order, count), ascending
    is_maximal: bool = False

    @property
    def order(self) -> int:
        return len(self.members)

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[list(self.members)] = True
        return m


def _fingerprint(G: FiniteGroup, members: np.ndarray) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(int(o) for o in G.orders[members]).items()))


def all_two_generated_subgroups(G: FiniteGroup) -> list[SubgroupRecord]:
    """Every proper subgroup of the form <x, y>, deduplicated and sorted.

    Conjugation moves any pair so that x is a class representative, so only
    pairs (rep, y) are closed; the remaining subgroups are recovered as
    conjugates of those closures.
    """
    if G.order > SUBGROUP_LIMIT:
        raise InputError(f"subgroup enumeration needs |G| <= {SUBGROUP_LIMIT}")
    cached = G.cache.get("subgroups")
    if cached is not None:
        return cached
    T = conjugacy_classes(G)
    n = G.order
    found: dict[bytes, np.ndarray] = {}
    half = n // 2
    for c in T.classes:
        for y in range(n):
            mask = closure_mask(G, [c.rep, y], stop_above=half)
            if mask.sum() > half:
                continue
            key = np.packbits(mask).tobytes()
            if key not in found:
                found[key] = mask
    reps = list(found.values())
    # close the set of representatives under conjugation
    tab, inv = G.table, G.inverses
    out: dict[bytes, np.ndarray] = {}
    for mask in reps:
        members = np.flatnonzero(mask)
        for g in range(n):
            conj = tab[tab[g, members], inv[g]]
            m = np.zeros(n, dtype=bool)
            m[conj] = True
            key = np.packbits(m).tobytes()
            if key not in out:
                out[key] = m
    records = []
    for m in out.values():
        members = np.flatnonzero(m)
        records.append(SubgroupRecord(tuple(members.tolist()), _fingerprint(G, members)))
    records.sort(key=lambda r: (r.order, r.members))
    records = _mark_maximal(records, n)
    G.cache["subgroups"] = records
    return records


def _mark_maximal(records: list[SubgroupRecord], n: int) -> list[SubgroupRecord]:
    masks = np.array([r.mask(n) for r in records]) if records else np.zeros((0, n), bool)
    orders = np.array([r.order for r in records])
    out = []
    for i, r in enumerate(records):
        bigger = np.flatnonzero((orders > r.order) & (orders % r.order == 0))
        members = list(r.members)
        contained = masks[bigger][:, members].all(axis=1) if bigger.size else np.array([], bool)
        out.append(SubgroupRecord(r.members, r.fingerprint, not bool(contained.any())))
    return out


def maximal_subgroup_records(G: FiniteGroup) -> list[SubgroupRecord]:
    return [r for r in all_two_generated_subgroups(G) if r.is_maximal]


@dataclass(frozen=True)
class MaximalClass:
    order: int
    copies: int
    fingerprint: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "copies": self.copies,
            "fingerprint": [[o, c] for o, c in self.fingerprint],
        }


def maximal_subgroups(G: FiniteGroup) -> list[MaximalClass]:
    """Maximal subgroups grouped by (order, fingerprint), largest first."""
    groups = Counter((r.order, r.fingerprint) for r in maximal_subgroup_records(G))
    out = [MaximalClass(o, c, fp) for (o, fp), c in groups.items()]
    out.sort(key=lambda m: (-m.order, m.fingerprint))
    return out


def subgroup_solution_counts(T: ConjugacyClassTable, cs: Sequence[int]) -> list[tuple[SubgroupRecord, int]]:
    """Per maximal subgroup copy: tuples from K_c ∩ H with product identity."""
    G = T.group
    out = []
    for rec in maximal_subgroup_records(G):
        out.append((rec, count_product_solutions_direct(T, cs, within=rec.mask(G.order))))
    return out


def subgroup_solution_bound(G: FiniteGroup, T: ConjugacyClassTable, cs: Sequence[int]) -> int:
    """Sum over maximal subgroup copies of the trapped solution counts.

    Over-counts tuples lying in several maximal subgroups, so it is an
    upper bound on the non-generating solutions.
    """
    return sum(c for _, c in subgroup_solution_counts(T, cs))
