"""Genus spectra from the closed-form classification.

A genus g is reachable when g = 1 + |G|(h - 1) + sum w_m a_m for some
admissible (h, a).  Writing v = g - 1 + |G| turns this into a coin problem
with denominations {|G|} plus the period weights, solved by a DP over the
coins; values hit by an excluded signature are settled by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels
from .errors import BadPeriod, NoWitness
from .signature import (
    ExponentVector,
    GroupModel,
    Signature,
    from_exponent_vector,
    get_model,
)

G_MAX_LIMIT = 10**6


@dataclass(frozen=True)
class WeightModel:
    """Coin data for a spectrum: group order, period weights, floor and exceptions."""

    group_id: str
    order: int
    weights: tuple[tuple[int, int], ...]  # (period, weight), ascending period
    min_genus: int
    exceptions: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_group_model(cls, model: GroupModel) -> "WeightModel":
        return cls(model.group_id, model.order, tuple(sorted(model.weights.items())), model.min_genus, model.exceptions)

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.weights)

    @property
    def cheapest(self) -> tuple[int, int]:
        """(period, weight) of the smallest weight; ties go to the smaller period."""
        return min(self.weights, key=lambda mw: (mw[1], mw[0]))

    def genus(self, h: int, a: dict[int, int]) -> int:
        return 1 + self.order * (h - 1) + sum(w * a.get(m, 0) for m, w in self.weights)

    def exception_offsets(self) -> dict[int, int]:
        """v-value -> number of excluded representations landing there."""
        out: dict[int, int] = {}
        for sig in self.exceptions:
            v = self.order * sig.h + sum(dict(self.weights)[m] for m in sig.periods)
            out[v] = out.get(v, 0) + 1
        return out


def as_weight_model(model) -> WeightModel:
    if isinstance(model, WeightModel):
        return model
    return WeightModel.from_group_model(get_model(model))


def _coins(wm: WeightModel) -> list[int]:
    return [wm.order] + [w for _, w in wm.weights]


def reachable_mask(model, g_max: int) -> np.ndarray:
    """Boolean array over genera 0..g_max."""
    wm = as_weight_model(model)
    if g_max < 0:
        return np.zeros(0, dtype=bool)
    if g_max > G_MAX_LIMIT:
        raise ValueError(f"g_max must be <= {G_MAX_LIMIT}")
    off = wm.order - 1  # v = g + off
    ways = _kernels.coin_ways(g_max + off, np.array(_coins(wm)))
    reach_v = ways > 0
    for v in wm.exception_offsets():
        if v < reach_v.size and reach_v[v]:
            # saturated counts cannot say how many representations survive; enumerate them
            reach_v[v] = _first_rep(wm, v) is not None
    reach = reach_v[off:].copy()
    reach[: max(0, min(wm.min_genus, g_max + 1))] = False
    return reach


@dataclass
class SpectrumResult:
    group_id: str
    g_max: int
    reachable: list[int]
    gaps: list[int]
    minimum_genus: int | None
    stable_upper_genus: int | None  # None when not certified below g_max

    def to_json(self) -> dict:
        return {
            "group": self.group_id,
            "g_max": self.g_max,
            "minimum_genus": self.minimum_genus,
            "stable_upper_genus": self.stable_upper_genus,
            "reachable_count": len(self.reachable),
            "gaps": self.gaps,
        }


def _stable_from_mask(reach: np.ndarray, w: int) -> int | None:
    run = 0
    for g in range(reach.size):
        run = run + 1 if reach[g] else 0
        if run == w:
            g0 = g - w + 1
            while g0 > 0 and reach[g0 - 1]:
                g0 -= 1
            return g0
    return None


def reachable_genera(model, g_max: int) -> SpectrumResult:
    wm = as_weight_model(model)
    reach = reachable_mask(wm, g_max)
    genera = np.flatnonzero(reach)
    lo = wm.min_genus
    gaps = [g for g in range(max(lo, 0), g_max + 1) if not reach[g]]
    stable = _stable_from_mask(reach, wm.cheapest[1])
    return SpectrumResult(
        wm.group_id,
        g_max,
        genera.tolist(),
        gaps,
        int(genera[0]) if genera.size else None,
        stable,
    )


@dataclass(frozen=True)
class StableCertificate:
    stable_upper_genus: int
    last_gap: int | None
    window: tuple[int, int]  # inclusive
    witnesses: tuple[Signature, ...]
    shift_period: int

    def to_json(self) -> dict:
        return {
            "stable_upper_genus": self.stable_upper_genus,
            "last_gap": self.last_gap,
            "window": list(self.window),
            "shift_period": self.shift_period,
            "witnesses": [s.to_json() for s in self.witnesses],
        }


def stable_upper_genus(model) -> StableCertificate:
    """Least g0 with every genus >= g0 reachable, with a window certificate.

    The window [g0, g0 + w - 1] for the cheapest weight w is witnessed
    explicitly; any larger genus is a window genus plus n*w, reached by
    adding n copies of the cheapest period.
    """
    wm = as_weight_model(model)
    period, w = wm.cheapest
    limit = max(4 * wm.order, 1024)
    while True:
        reach = reachable_mask(wm, limit)
        g0 = _stable_from_mask(reach, w)
        if g0 is not None:
            break
        if limit >= G_MAX_LIMIT:
            raise NoWitness("no full window below the DP limit")
        limit = min(2 * limit, G_MAX_LIMIT)
    witnesses = tuple(witness_signature_for_genus(wm, g) for g in range(g0, g0 + w))
    last_gap = g0 - 1 if g0 > 0 else None
    return StableCertificate(g0, last_gap, (g0, g0 + w - 1), witnesses, period)


# -- witnesses -------------------------------------------------------------------

def _reps_lex(v: int, coins: list[int], suffix: list[np.ndarray]) -> Iterator[list[int]]:
    """Multiplicity vectors with sum k_t * coins[t] == v, in lexicographic order."""

    def rec(t: int, rem: int):
        if t == len(coins):
            if rem == 0:
                yield []
            return
        c = coins[t]
        for k in range(rem // c + 1):
            r2 = rem - k * c
            if t + 1 < len(coins) and not suffix[t + 1][r2]:
                continue
            for rest in rec(t + 1, r2):
                yield [k] + rest

    yield from rec(0, v)


def witness_signature_for_genus(model, g: int) -> Signature:
    """Lexicographically least admissible (h, a_.) with genus g."""
    wm = as_weight_model(model)
    v = g - 1 + wm.order
    if g < wm.min_genus or v < 0:
        raise NoWitness(f"genus {g} is below the minimum genus {wm.min_genus} of {wm.group_id}")
    sig = _first_rep(wm, v)
    if sig is None:
        raise NoWitness(f"genus {g} is not reachable for {wm.group_id}")
    return sig


def _first_rep(wm: WeightModel, v: int) -> Signature | None:
    coins = _coins(wm)
    suffix: list[np.ndarray] = [None] * len(coins)  # type: ignore[list-item]
    for t in range(1, len(coins)):
        suffix[t] = _kernels.coin_ways(v, np.array(coins[t:])) > 0
    for rep in _reps_lex(v, coins, suffix):
        sig = from_exponent_vector(ExponentVector(rep[0], dict(zip(wm.periods, rep[1:]))))
        if sig not in wm.exceptions:
            return sig
    return None


def shift_witness(model, base: Signature, n: int) -> Signature:
    """Add n copies of the cheapest period; the genus grows by n times its weight."""
    wm = as_weight_model(model)
    if n < 0:
        raise ValueError("shift must be >= 0")
    period, _ = wm.cheapest
    return Signature(base.h, base.periods + (period,) * n)


def table_rows(model, g_from: int, g_to: int) -> list[tuple[int, ...]]:
    """(genus, h, a_m for each period) for every reachable genus in the range."""
    wm = as_weight_model(model)
    rows = []
    for g in range(g_from, g_to + 1):
        try:
            sig = witness_signature_for_genus(wm, g)
        except NoWitness:
            continue
        rows.append((g, sig.h) + tuple(sig.periods.count(m) for m in wm.periods))
    return rows


def table_header(model) -> list[str]:
    wm = as_weight_model(model)
    return ["genus", "h"] + [f"a{m}" for m in wm.periods]


def weighted_genus_of(model, sig: Signature) -> int:
    wm = as_weight_model(model)
    bad = [m for m in sig.periods if m not in wm.periods]
    if bad:
        raise BadPeriod(f"periods {bad} carry no weight in {wm.group_id}")
    return wm.genus(sig.h, {m: sig.periods.count(m) for m in wm.periods})
