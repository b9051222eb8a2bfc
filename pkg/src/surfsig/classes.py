"""Conjugacy classes and exact class multiplication counts.

Two counting routes exist on purpose.  The class-level route convolves
:class:`ClassVector` objects through the structure constants ``lambda``;
the element-level route pushes an integer distribution over group
elements through one class at a time.  They must agree.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .groups import FiniteGroup

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class ConjugacyClass:
    label: str
    rep: int
    members: tuple[int, ...]
    element_order: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(eq=False)
class ConjugacyClassTable:
    group: FiniteGroup
    classes: list[ConjugacyClass]
    class_of: np.ndarray
    _lam: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    def size(self, c: int) -> int:
        return self.classes[c].size

    def centralizer_order(self, c: int) -> int:
        return self.group.order // self.classes[c].size

    def class_id(self, label: str) -> int:
        for i, c in enumerate(self.classes):
            if c.label == label:
                return i
        raise KeyError(label)

    def inverse_class(self, c: int) -> int:
        return int(self.class_of[self.group.inv(self.classes[c].rep)])

    def power_map(self, c: int, k: int) -> int:
        return int(self.class_of[self.group.power(self.classes[c].rep, k)])

    def classes_of_order(self, m: int) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.element_order == m]

    def members_array(self, c: int) -> np.ndarray:
        return np.fromiter(self.classes[c].members, dtype=np.int64)


def _letters(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = string.ascii_uppercase[r] + s
    return s


def _orbits(G: FiniteGroup) -> list[list[int]]:
    seen = np.zeros(G.order, dtype=bool)
    orbits = []
    if G.table is not None:
        conj_all = G.table[G.table[:, :], G.inverses[:, None]]  # [g, x] -> g x g^-1
        for x in range(G.order):
            if seen[x]:
                continue
            orb = np.unique(conj_all[:, x])
            seen[orb] = True
            orbits.append(orb.tolist())
        return orbits
    gens = G.generators or tuple(range(G.order))
    for x in range(G.order):
        if seen[x]:
            continue
        seen[x] = True
        orb = [x]
        stack = [x]
        while stack:
            y = stack.pop()
            for g in gens:
                z = G.conjugate(y, g)
                if not seen[z]:
                    seen[z] = True
                    orb.append(z)
                    stack.append(z)
        orbits.append(sorted(orb))
    return orbits


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClassTable:
    """Class table with ATLAS-style labels ``<order><letter>``.

    Classes are ordered by element order, then by smallest member index;
    letters follow the same order.  Memoized on the group.
    """
    cached = G.cache.get("classes")
    if cached is not None:
        return cached
    orbits = _orbits(G)
    orbits.sort(key=lambda orb: (int(G.orders[orb[0]]), orb[0]))
    classes = []
    per_order: dict[int, int] = {}
    class_of = np.empty(G.order, dtype=np.int64)
    for cid, orb in enumerate(orbits):
        m = int(G.orders[orb[0]])
        letter = _letters(per_order.get(m, 0))
        per_order[m] = per_order.get(m, 0) + 1
        classes.append(ConjugacyClass(f"{m}{letter}", orb[0], tuple(orb), m))
        class_of[orb] = cid
    T = ConjugacyClassTable(G, classes, class_of)
    G.cache["classes"] = T
    return T


# -- structure constants ------------------------------------------------------

def _pair_hist(T: ConjugacyClassTable, i: int, j: int) -> np.ndarray:
    G = T.group
    if G.table is not None:
        return _kernels.pair_product_hist(G.table, T.members_array(i), T.members_array(j))
    hist = np.zeros(G.order, dtype=np.int64)
    for x in T.classes[i].members:
        for y in T.classes[j].members:
            hist[G.mul(x, y)] += 1
    return hist


def lambda_row(T: ConjugacyClassTable, i: int, j: int) -> tuple[int, ...]:
    """(lambda(i, j, k) for every k), by the K_i x K_j double loop."""
    key = (i, j)
    row = T._lam.get(key)
    if row is None:
        hist = _pair_hist(T, i, j)
        row = tuple(int(hist[c.rep]) for c in T.classes)
        T._lam[key] = row  # idempotent under races
    return row


def lambda_coefficient(T: ConjugacyClassTable, i: int, j: int, k: int) -> int:
    """Ordered pairs (x, y) in K_i x K_j with x*y equal to the rep of K_k."""
    return lambda_row(T, i, j)[k]


@dataclass(frozen=True)
class ClassVector:
    """Per-element counts indexed by class: ``counts[k]`` refers to one fixed element of K_k."""

    counts: tuple[int, ...]

    @classmethod
    def indicator(cls, T: ConjugacyClassTable, c: int) -> "ClassVector":
        return cls(tuple(1 if k == c else 0 for k in range(len(T))))

    def times_class(self, T: ConjugacyClassTable, c: int) -> "ClassVector":
        """Append one factor from K_c on the right."""
        out = [0] * len(T)
        for a, va in enumerate(self.counts):
            if va:
                row = lambda_row(T, a, c)
                for k, lam in enumerate(row):
                    if lam:
                        out[k] += va * lam
        return ClassVector(tuple(out))

    def class_on_left(self, T: ConjugacyClassTable, c: int) -> "ClassVector":
        """Prepend one factor from K_c on the left."""
        out = [0] * len(T)
        for a, va in enumerate(self.counts):
            if va:
                row = lambda_row(T, c, a)
                for k, lam in enumerate(row):
                    if lam:
                        out[k] += va * lam
        return ClassVector(tuple(out))

    def __getitem__(self, k: int) -> int:
        return self.counts[k]


def product_vector(T: ConjugacyClassTable, cs: Sequence[int]) -> ClassVector:
    """Tuples (x_1..x_r), x_t in K_{cs[t]}, with product a fixed element of each class."""
    if not cs:
        return ClassVector.indicator(T, int(T.class_of[T.group.identity]))
    v = ClassVector.indicator(T, cs[0])
    for c in cs[1:]:
        v = v.times_class(T, c)
    return v


def count_product_solutions(T: ConjugacyClassTable, cs: Sequence[int]) -> int:
    """Number of r-tuples from the given classes whose product is the identity."""
    cs = list(cs)
    if len(cs) < 2:
        raise ValueError("need at least two classes")
    if len(cs) == 3:
        return count_triples_direct(T, *cs)
    v = product_vector(T, cs[:-1])
    last = cs[-1]
    return v[T.inverse_class(last)] * T.size(last)


def count_triples_direct(T: ConjugacyClassTable, i: int, j: int, k: int) -> int:
    """Loop over K_i x K_j, testing (xy)^-1 in K_k."""
    G = T.group
    hist = _pair_hist(T, i, j)
    target = T.class_of[G.inverses] == k  # z with z^-1 in K_k
    return int(hist[target].sum())


def count_product_solutions_direct(T: ConjugacyClassTable, cs: Sequence[int], within: np.ndarray | None = None) -> int:
    """Element-level route: push a distribution over G through each class.

    ``within`` optionally restricts every factor to a subset (a boolean
    mask), which gives solution counts inside a subgroup.
    """
    G = T.group
    cs = list(cs)
    if not cs:
        return 1
    bound = math.prod(T.size(c) for c in cs)
    dtype = np.int64 if bound < _INT64_SAFE else object
    counts = np.zeros(G.order, dtype=dtype)
    counts[G.identity] = 1
    for c in cs:
        members = T.members_array(c)
        if within is not None:
            members = members[within[members]]
        if members.size == 0:
            return 0
        if G.table is not None:
            counts = _kernels.convolve_right(G.table, counts, members)
        else:
            nxt = np.zeros_like(counts)
            for w in np.flatnonzero(counts):
                for x in members:
                    nxt[G.mul(int(w), int(x))] += counts[w]
            counts = nxt
    return int(counts[G.identity])
