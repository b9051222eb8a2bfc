"""Quoted class-multiplication values and a reconciler for them.

A claim names classes by label ("7A") or by bare order ("7", any class of
that order), and carries one or more quoted numbers: either for the whole
group or summed over / per copy of the maximal subgroups of one order.  A
claim reconciles when a single class choice and a single normalization
reproduce every number in it.

Normalizations all scale the same product-one count
N = #{(x_1..x_r) in K_1 x .. x K_r : x_1 .. x_r = 1}:
  total        N
  lambda       N / |K_r|      (solutions with x_r fixed)
  lambda_size  lambda * |K_r|, which equals N by the bridge identity
Inside a subgroup H the class sizes are |K_r ∩ H|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from surfsig.classes import ConjugacyClassTable, count_product_solutions, count_product_solutions_direct
from surfsig.subgroups import maximal_subgroup_records

NORMALIZATIONS = ("total", "lambda", "lambda_size")


@dataclass(frozen=True)
class Quote:
    value: int
    scope: int | None = None  # None: whole group; else order of the maximal subgroups
    per_copy: bool = False


@dataclass(frozen=True)
class Claim:
    p: int
    classes: tuple[str, ...]
    quotes: tuple[Quote, ...]


def Q(value, scope=None, per_copy=False):
    return Quote(value, scope, per_copy)


CLAIMS = [
    Claim(7, ("2", "4", "7"), (Q(168),)),
    Claim(7, ("2A", "7A", "7A"), (Q(120),)),
    Claim(7, ("2A", "7B", "7B"), (Q(120),)),
    Claim(7, ("2A", "7A", "7B"), (Q(0),)),
    Claim(7, ("3", "3", "4"), (Q(672), Q(0, 24))),
    Claim(7, ("3", "4", "4"), (Q(672), Q(336, 24))),
    Claim(7, ("3", "3", "7"), (Q(504),)),
    Claim(7, ("4", "4", "4"), (Q(0, 21),)),  # printed next to the (3,3,7) case
    Claim(7, ("3", "7", "7"), (Q(216),)),
    Claim(7, ("3", "7", "7"), (Q(0, 21, True),)),
    Claim(7, ("3", "4", "7"), (Q(336),)),
    Claim(7, ("4", "4", "4"), (Q(672), Q(0, 24, True))),
    Claim(7, ("4", "4", "7"), (Q(168),)),
    Claim(7, ("4", "7", "7"), (Q(336),)),
    Claim(7, ("4", "7", "7"), (Q(0),)),
    Claim(7, ("7A", "7A", "7A"), (Q(216), Q(6, 21, True))),
    Claim(7, ("7B", "7B", "7B"), (Q(216), Q(6, 21, True))),
    Claim(7, ("7A", "7A", "7B"), (Q(24), Q(3, 21, True))),
    Claim(7, ("7B", "7B", "7A"), (Q(24), Q(3, 21, True))),
    Claim(11, ("5", "5", "11"), (Q(1320), Q(0, 55, True))),
    Claim(11, ("5", "11", "11"), (Q(1440), Q(0, 55, True))),
    Claim(11, ("11A", "11A", "11A"), (Q(840), Q(180, 55))),
    Claim(11, ("11B", "11B", "11B"), (Q(840), Q(180, 55))),
    Claim(11, ("11A", "11B", "11B"), (Q(120, 55),)),
    Claim(11, ("11A", "11A", "11B"), (Q(120, 55),)),
    Claim(11, ("2", "2", "2", "3"), (Q(990, 60),)),
    Claim(11, ("2", "3", "3", "3"), (Q(52800, 60),)),
    Claim(11, ("2", "2", "2", "5"), (Q(30250), Q(9900, 60))),
    Claim(11, ("3", "3", "5"), (Q(2640), Q(1320, 60))),
    Claim(11, ("3", "5", "5"), (Q(2640), Q(1320, 60))),
    # closed form 6 * 55^(a-2) for a involutions, evaluated at a = 3 and a = 4
    Claim(11, ("2", "2", "2"), (Q(330),)),
    Claim(11, ("2", "2", "2", "2"), (Q(18150),)),
]


def _choices(T: ConjugacyClassTable, spec):
    opts = []
    for s in spec:
        if s[-1].isalpha():
            opts.append([T.class_id(s)])
        else:
            opts.append(T.classes_of_order(int(s)))
    return list(itertools.product(*opts))


def normalized(T: ConjugacyClassTable, cs, within=None) -> dict[str, Fraction]:
    if within is None:
        n = count_product_solutions(T, cs)
        size = T.size(cs[-1])
    else:
        n = count_product_solutions_direct(T, cs, within=within)
        size = int(within[T.members_array(cs[-1])].sum())
    lam = Fraction(n, size) if size else Fraction(0)
    return {"total": Fraction(n), "lambda": lam, "lambda_size": lam * size}


def quote_values(T: ConjugacyClassTable, cs, quote: Quote, records) -> dict[str, Fraction]:
    G = T.group
    if quote.scope is None:
        return normalized(T, cs)
    subs = [r for r in records if r.order == quote.scope]
    per = [normalized(T, cs, r.mask(G.order)) for r in subs]
    out = {k: sum((d[k] for d in per), Fraction(0)) for k in NORMALIZATIONS}
    if quote.per_copy:
        out = {k: v / len(subs) for k, v in out.items()}
    return out


@dataclass
class Outcome:
    claim: Claim
    reconciled: bool
    choice: tuple[str, ...] | None
    normalization: str | None
    computed: dict  # class choice -> list of per-quote normalized values
    zero_ok: bool


def reconcile(claim: Claim, T: ConjugacyClassTable) -> Outcome:
    records = maximal_subgroup_records(T.group)
    computed = {}
    hit = None
    for cs in _choices(T, claim.classes):
        vals = [quote_values(T, cs, q, records) for q in claim.quotes]
        computed[tuple(T.labels[c] for c in cs)] = vals
        if hit is None:
            for norm in NORMALIZATIONS:
                if all(v[norm] == q.value for v, q in zip(vals, claim.quotes)):
                    hit = (tuple(T.labels[c] for c in cs), norm)
                    break
    # a quoted zero must be zero under every normalization for the reconciling choice,
    # or for every choice when nothing reconciles
    keys = [hit[0]] if hit else list(computed)
    zero_ok = all(
        all(v == 0 for v in computed[k][i].values())
        for k in keys
        for i, q in enumerate(claim.quotes)
        if q.value == 0
    )
    return Outcome(claim, hit is not None, hit[0] if hit else None, hit[1] if hit else None, computed, zero_ok)


def describe(o: Outcome) -> str:
    c = o.claim
    quotes = ", ".join(
        f"{q.value}@{'G' if q.scope is None else q.scope}{'/copy' if q.per_copy else ''}" for q in c.quotes
    )
    head = f"PSL(2,{c.p}) C[{','.join(c.classes)}] = {quotes}"
    if o.reconciled:
        return f"{head}: reproduced by {'/'.join(o.choice)} under {o.normalization}"
    got = "; ".join(
        f"{'/'.join(k)} -> " + ", ".join(str(v['total']) for v in vals) for k, vals in o.computed.items()
    )
    return f"{head}: IRRECONCILABLE (totals {got})"
