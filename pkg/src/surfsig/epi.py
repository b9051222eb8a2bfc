"""Surface-kernel epimorphism search.

Given a group G and a signature (h; m_1..m_r), look for elements
alpha_i, beta_i, c_j of G with ord(c_j) = m_j, prod [alpha_i, beta_i] *
prod c_j = 1, and the whole tuple generating G.

The search is exhaustive up to two lossless reductions: the c_j may be
permuted freely (braid moves preserve orders, the long relation and the
generated subgroup), and the whole tuple may be conjugated so that one
chosen coordinate is a class representative.  Prefix products are pruned
with class-algebra counts of the remaining factors.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .classes import ConjugacyClassTable, conjugacy_classes, product_vector
from .errors import InputError
from .groups import FiniteGroup, commutator, generates
from .signature import Signature

DEFAULT_BUDGET = 10**8
MAX_SLOTS = 12

FOUND = "found"
NOT_FOUND = "not_found"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class EpiWitness:
    group_id: str
    signature: Signature
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    c: tuple[int, ...]

    def to_json(self, G: FiniteGroup | None = None, elements_as: str = "index") -> dict:
        if elements_as == "index":
            conv = int
        elif elements_as == "matrix":
            if G is None:
                raise ValueError("need the group to render payloads")
            conv = G.payload
        else:
            raise ValueError(f"unknown element rendering {elements_as!r}")
        return {
            "group": self.group_id,
            "signature": self.signature.to_json(),
            "alpha": [conv(x) for x in self.alpha],
            "beta": [conv(x) for x in self.beta],
            "c": [conv(x) for x in self.c],
            "elements_as": elements_as,
        }

    @classmethod
    def from_json(cls, obj: dict, G: FiniteGroup | None = None) -> "EpiWitness":
        if obj.get("elements_as", "index") == "matrix":
            conv = G.index_of
        else:
            conv = int
        return cls(
            obj["group"],
            Signature.from_json(obj["signature"]),
            tuple(conv(x) for x in obj["alpha"]),
            tuple(conv(x) for x in obj["beta"]),
            tuple(conv(x) for x in obj["c"]),
        )


@dataclass
class SearchOutcome:
    verdict: str
    witness: EpiWitness | None = None
    nodes_explored: int = 0
    budget: int = DEFAULT_BUDGET
    branches: int = 0

    @property
    def found(self) -> bool:
        return self.verdict == FOUND

    def to_json(self, G: FiniteGroup | None = None, elements_as: str = "index") -> dict:
        return {
            "verdict": self.verdict,
            "nodes_explored": self.nodes_explored,
            "budget": self.budget,
            "witness": None if self.witness is None else self.witness.to_json(G, elements_as),
        }


def verify_witness(G: FiniteGroup, w: EpiWitness) -> bool:
    """Check orders, the long relation and surjectivity directly."""
    sig = w.signature
    if len(w.alpha) != sig.h or len(w.beta) != sig.h or len(w.c) != sig.r:
        return False
    everything = list(w.alpha) + list(w.beta) + list(w.c)
    if any(not 0 <= x < G.order for x in everything):
        return False
    if any(int(G.orders[x]) != m for x, m in zip(w.c, sig.periods)):
        return False
    acc = G.identity
    for a, b in zip(w.alpha, w.beta):
        acc = G.mul(acc, commutator(G, a, b))
    for x in w.c:
        acc = G.mul(acc, x)
    if acc != G.identity:
        return False
    return generates(G, everything)


def braid_sort(G: FiniteGroup, cs: Sequence[int]) -> list[int]:
    """Reorder c's by ascending order via Hurwitz moves; the product is unchanged."""
    cs = list(cs)
    done = False
    while not done:
        done = True
        for j in range(len(cs) - 1):
            if G.orders[cs[j]] > G.orders[cs[j + 1]]:
                a, b = cs[j], cs[j + 1]
                cs[j], cs[j + 1] = b, G.mul(G.mul(G.inv(b), a), b)
                done = False
    return cs


class _BudgetExhausted(Exception):
    pass


class _Branch:
    """Exhaustive search for one assignment of classes to the c's."""

    def __init__(self, G: FiniteGroup, T: ConjugacyClassTable, h: int, classes: Sequence[int], budget: int, reduce: bool):
        self.G = G
        self.T = T
        self.h = h
        self.classes = list(classes)
        self.r = len(classes)
        self.budget = budget
        self.reduce = reduce
        self.nodes = 0
        self.e = G.identity
        self.inv = G.inverses.tolist()
        self.class_of = T.class_of.tolist()
        if G.table is not None:
            tab = G.table.tolist()
            self.mul = lambda x, y: tab[x][y]
        else:
            self.mul = G.mul
        self.members = [list(T.classes[c].members) for c in self.classes]
        # suffix[t][k]: tuples from classes[t:] multiplying to a fixed element of K_k
        self.suffix = [product_vector(T, self.classes[t:]).counts for t in range(self.r)] + [None]
        self.gens: list[int] = []
        self.elements = list(range(G.order))

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted

    def _completes(self, P: int, t: int) -> bool:
        """Can classes[t:] multiply to P^-1?"""
        if t == self.r:
            return P == self.e
        return self.suffix[t][self.class_of[self.inv[P]]] > 0

    def _generates(self) -> bool:
        return generates(self.G, self.gens)

    def run(self):
        if self.r and self.suffix[0][self.class_of[self.e]] == 0 and self.h == 0:
            return None
        res = self._handles(0, self.e, False)
        return res

    # handles ------------------------------------------------------------
    def _alpha_candidates(self, i: int):
        if self.reduce and self.r == 0 and i == 0:
            return [c.rep for c in self.T.classes]
        return self.elements

    def _after_handles_ok(self, P: int) -> bool:
        if self.r == 0:
            return P == self.e
        if self.reduce:
            return self._completes(self.mul(P, self.T.classes[self.classes[0]].rep), 1)
        return self._completes(P, 0)

    def _handles(self, i: int, P: int, free: bool):
        if i == self.h:
            return self._cs(0, P, free)
        last = i == self.h - 1
        mul, inv = self.mul, self.inv
        for a in self._alpha_candidates(i):
            Pa = mul(P, a)
            ia = inv[a]
            for b in self.elements:
                self._tick()
                P2 = mul(mul(mul(Pa, b), ia), inv[b])
                if last and not self._after_handles_ok(P2):
                    continue
                self.gens += [a, b]
                f2 = free or self._generates()
                res = self._handles(i + 1, P2, f2)
                del self.gens[-2:]
                if res is not None:
                    return [(a, b)] + res[0], res[1]
        return None

    # torsion part ---------------------------------------------------------
    def _cs(self, t: int, P: int, free: bool):
        if t == self.r:
            if P != self.e:
                return None
            return ([], []) if (free or self._generates()) else None
        cls = self.classes[t]
        if t == self.r - 1:
            self._tick()
            c = self.inv[P]
            if self.class_of[c] != cls:
                return None
            self.gens.append(c)
            ok = free or self._generates()
            self.gens.pop()
            return ([], [c]) if ok else None
        if t == 0 and self.reduce:
            cands = [self.T.classes[cls].rep]
        else:
            cands = self.members[t]
        for c in cands:
            self._tick()
            P2 = self.mul(P, c)
            if not self._completes(P2, t + 1):
                continue
            self.gens.append(c)
            f2 = free or self._generates()
            res = self._cs(t + 1, P2, f2)
            self.gens.pop()
            if res is not None:
                return ([], [c] + res[1])
        return None


def class_assignments(T: ConjugacyClassTable, sig: Signature) -> list[tuple[int, ...]]:
    """Multisets of classes realizing the periods, each sorted by descending class size."""
    per_period = []
    for m in sorted(set(sig.periods)):
        k = sig.periods.count(m)
        opts = T.classes_of_order(m)
        if not opts:
            return []
        per_period.append(list(itertools.combinations_with_replacement(opts, k)))
    out = []
    for combo in itertools.product(*per_period):
        flat = [c for part in combo for c in part]
        flat.sort(key=lambda c: (-T.size(c), c))
        out.append(tuple(flat))
    return out


def _run_branch(args):
    G, h, classes, budget, reduce = args
    T = conjugacy_classes(G)
    br = _Branch(G, T, h, classes, budget, reduce)
    try:
        res = br.run()
    except _BudgetExhausted:
        return UNDETERMINED, None, br.nodes
    if res is None:
        return NOT_FOUND, None, br.nodes
    return FOUND, res, br.nodes


def _generating_pair(G: FiniteGroup, T: ConjugacyClassTable) -> tuple[int, int] | None:
    for c in reversed(T.classes):
        for y in range(G.order):
            if generates(G, [c.rep, y]):
                return c.rep, y
    return None


def exists_epimorphism(
    G: FiniteGroup,
    sig: Signature,
    budget: int = DEFAULT_BUDGET,
    *,
    reduce_conjugacy: bool = True,
    jobs: int = 1,
) -> SearchOutcome:
    """Decide whether a surface-kernel epimorphism onto G exists.

    The budget caps the nodes of each class-assignment branch.  Any branch
    that runs out turns an otherwise negative answer into ``undetermined``.
    """
    if 2 * sig.h + sig.r > MAX_SLOTS:
        raise InputError(f"2h + r must be <= {MAX_SLOTS}, got {2 * sig.h + sig.r}")
    T = conjugacy_classes(G)
    gid = G.name

    def found(alpha, beta, cs, nodes, branches=1):
        w = EpiWitness(gid, sig, tuple(alpha), tuple(beta), tuple(braid_sort(G, cs)))
        return SearchOutcome(FOUND, w, nodes, budget, branches)

    if G.order == 1:
        if sig.r:
            return SearchOutcome(NOT_FOUND, None, 0, budget)
        e = G.identity
        return found([e] * sig.h, [e] * sig.h, [], 0)
    if sig.r == 0 and sig.h == 0:
        return SearchOutcome(NOT_FOUND, None, 0, budget)
    if sig.r == 0 and sig.h >= 2:
        pair = _generating_pair(G, T)
        if pair is not None:
            A, B = pair
            e = G.identity
            alpha = [A, B] + [A] * (sig.h - 2)
            beta = [e, e] + [A] * (sig.h - 2)
            return found(alpha, beta, [], 0, 0)

    branches = class_assignments(T, sig)
    if not branches:
        return SearchOutcome(NOT_FOUND, None, 0, budget)
    if sig.r == 0:
        branches = [()]

    tasks = [(G, sig.h, b, budget, reduce_conjugacy) for b in branches]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_branch, tasks))
    else:
        results = []
        for t in tasks:
            results.append(_run_branch(t))
            if results[-1][0] == FOUND:
                break

    nodes = 0
    undetermined = False
    for i, (verdict, res, n) in enumerate(results):
        nodes += n
        if verdict == FOUND:
            handles, cs = res
            alpha = [a for a, _ in handles]
            beta = [b for _, b in handles]
            return found(alpha, beta, cs, nodes, i + 1)
        if verdict == UNDETERMINED:
            undetermined = True
    return SearchOutcome(UNDETERMINED if undetermined else NOT_FOUND, None, nodes, budget, len(results))


def is_order_k_commutator(G: FiniteGroup, k: int) -> tuple[int, int] | None:
    """First pair (x, y), identity scanned first, with [x, y] of order exactly k."""
    if G.order > 1000:
        raise InputError("commutator scan needs |G| <= 1000")
    xs = [G.identity] + [x for x in range(G.order) if x != G.identity]
    x, y = _kernels.find_commutator(G.table, G.inverses, G.orders, k, np.array(xs))
    if x < 0:
        return None
    # the kernels scan y in index order; put the identity first for k = 1
    if k == 1:
        return G.identity, G.identity
    return int(x), int(y)
