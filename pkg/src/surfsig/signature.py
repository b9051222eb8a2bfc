"""Signatures, Riemann-Hurwitz arithmetic and the closed-form classification.

A signature ``(h; m_1, ..., m_r)`` stores the orbit genus and the sorted
periods.  Everything here is exact rational arithmetic and independent of
the group machinery, so :func:`classify` can be cross-checked against the
epimorphism search.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import BadPeriod, HypothesisViolation, InputError


@dataclass(frozen=True, order=True)
class Signature:
    h: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        if self.h < 0:
            raise InputError(f"orbit genus must be >= 0, got {self.h}")
        ps = tuple(sorted(int(m) for m in self.periods))
        if any(m < 2 for m in ps):
            raise InputError(f"periods must be >= 2, got {ps}")
        object.__setattr__(self, "periods", ps)

    @property
    def r(self) -> int:
        return len(self.periods)

    def __str__(self) -> str:
        body = ",".join(str(m) for m in self.periods) or "-"
        return f"({self.h};{body})"

    def to_json(self) -> dict:
        return {"h": self.h, "periods": list(self.periods)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Signature":
        return cls(int(obj["h"]), tuple(int(m) for m in obj.get("periods", ())))


_SIG_RE = re.compile(r"^\(\s*(\d+)\s*;(.*)\)$")
_POW_RE = re.compile(r"^(\d+)\s*\^\s*\[?\s*(\d+)\s*\]?$")


def parse_signature(text: str) -> Signature:
    """Parse ``(0;2,3,7)``, ``(1;-)``, ``(0;2^[5])`` or ``h=0 2^4 3^1``."""
    s = text.strip()
    m = _SIG_RE.match(s)
    if m:
        h = int(m.group(1))
        body = m.group(2).strip()
        periods: list[int] = []
        if body not in ("", "-", "−"):
            for tok in body.split(","):
                tok = tok.strip()
                pm = _POW_RE.match(tok)
                if pm:
                    periods += [int(pm.group(1))] * int(pm.group(2))
                elif tok.isdigit():
                    periods.append(int(tok))
                else:
                    raise InputError(f"bad period token {tok!r} in {text!r}")
        return Signature(h, tuple(periods))
    if s.startswith("h="):
        toks = s.split()
        try:
            h = int(toks[0][2:])
        except ValueError:
            raise InputError(f"bad orbit genus in {text!r}") from None
        periods = []
        for tok in toks[1:]:
            pm = _POW_RE.match(tok)
            if not pm:
                raise InputError(f"bad exponent token {tok!r} in {text!r}")
            periods += [int(pm.group(1))] * int(pm.group(2))
        return Signature(h, tuple(periods))
    raise InputError(f"cannot parse signature {text!r}")


def riemann_hurwitz_genus(order: int, sig: Signature) -> Fraction:
    """g = 1 + |G|(h-1) + |G|/2 * sum(1 - 1/m_i), as an exact rational."""
    if order < 1:
        raise InputError("group order must be positive")
    s = sum((1 - Fraction(1, m) for m in sig.periods), Fraction(0))
    return 1 + order * (sig.h - 1) + Fraction(order, 2) * s


def is_integral(g: Fraction) -> bool:
    return g.denominator == 1


# -- group models --------------------------------------------------------------

@dataclass(frozen=True)
class GroupModel:
    """Closed-form admissibility data for one group."""

    group_id: str
    order: int
    periods: tuple[int, ...]
    min_genus: int
    exceptions: frozenset = field(default_factory=frozenset)

    def weight(self, m: int) -> int:
        w = Fraction(self.order, 2) * (1 - Fraction(1, m))
        if w.denominator != 1:
            raise ValueError(f"non-integral weight for period {m}")
        return int(w)

    @property
    def weights(self) -> dict[int, int]:
        return {m: self.weight(m) for m in self.periods}


MODELS = {
    "psl2_7": GroupModel("psl2_7", 168, (2, 3, 4, 7), 3, frozenset({Signature(1, (2,))})),
    "psl2_11": GroupModel("psl2_11", 660, (2, 3, 5, 6, 11), 26),
}

_ALIASES = {"psl2:7": "psl2_7", "psl2:11": "psl2_11", "psl2_7": "psl2_7", "psl2_11": "psl2_11"}


def get_model(group_id: str | GroupModel) -> GroupModel:
    if isinstance(group_id, GroupModel):
        return group_id
    key = _ALIASES.get(str(group_id).strip().lower())
    if key is None:
        raise InputError(f"no closed-form classification for group {group_id!r}; use psl2_7 or psl2_11")
    return MODELS[key]


@dataclass(frozen=True)
class Classification:
    admissible: bool
    genus: Fraction
    reason: str | None = None  # bad_period | below_min_genus | excluded_exception

    def to_json(self) -> dict:
        g = self.genus
        return {
            "verdict": "admissible" if self.admissible else "rejected",
            "genus": str(g),
            "reason": self.reason,
        }


def classify(group_id: str | GroupModel, sig: Signature) -> Classification:
    """Decide admissibility from the closed-form rules alone."""
    model = get_model(group_id)
    g = riemann_hurwitz_genus(model.order, sig)
    if any(m not in model.periods for m in sig.periods):
        return Classification(False, g, "bad_period")
    if sig in model.exceptions:
        return Classification(False, g, "excluded_exception")
    if g < model.min_genus:
        return Classification(False, g, "below_min_genus")
    return Classification(True, g)


def weighted_genus(group_id: str | GroupModel, sig: Signature) -> int:
    """1 + |G|(h-1) + sum of weight * multiplicity, over allowed periods."""
    model = get_model(group_id)
    vec = to_exponent_vector(model, sig)
    return 1 + model.order * (vec.h - 1) + sum(model.weight(m) * a for m, a in vec.a.items())


# -- exponent vectors ----------------------------------------------------------

@dataclass(frozen=True)
class ExponentVector:
    h: int
    a: Mapping[int, int]  # period -> multiplicity, every allowed period present

    def as_tuple(self) -> tuple[int, ...]:
        return (self.h,) + tuple(self.a[m] for m in sorted(self.a))

    def __str__(self) -> str:
        return " ".join([f"h={self.h}"] + [f"{m}^{k}" for m, k in sorted(self.a.items())])


def to_exponent_vector(group_id: str | GroupModel, sig: Signature) -> ExponentVector:
    model = get_model(group_id)
    bad = [m for m in sig.periods if m not in model.periods]
    if bad:
        raise BadPeriod(f"periods {bad} are not element orders of {model.group_id}")
    return ExponentVector(sig.h, {m: sig.periods.count(m) for m in model.periods})


def from_exponent_vector(vec: ExponentVector) -> Signature:
    periods: list[int] = []
    for m, k in sorted(vec.a.items()):
        if k < 0:
            raise InputError("multiplicities must be >= 0")
        periods += [m] * k
    return Signature(vec.h, tuple(periods))


# -- constructions on signatures ----------------------------------------------

def _is_odd_prime(m: int) -> bool:
    return m > 2 and all(m % q for q in range(2, int(m**0.5) + 1))


def extend_signature(sig: Signature, period: int) -> Signature:
    """Duplicate a period equal to 2 or an odd prime."""
    if period not in sig.periods:
        raise HypothesisViolation(f"period {period} does not occur in {sig}")
    if not (period == 2 or _is_odd_prime(period)):
        raise HypothesisViolation(f"period {period} is neither 2 nor an odd prime")
    return Signature(sig.h, sig.periods + (period,))


def monoid_combine(a: Signature, b: Signature, same_genus: bool = False) -> Signature:
    """Concatenate periods; orbit genera add unless ``same_genus`` is set.

    ``same_genus=True`` is the product inside one orbit-genus stratum and
    requires ``a.h == b.h``.
    """
    if same_genus:
        if a.h != b.h:
            raise HypothesisViolation(f"same-genus product needs equal orbit genera, got {a.h} and {b.h}")
        return Signature(a.h, a.periods + b.periods)
    return Signature(a.h + b.h, a.periods + b.periods)


def signatures_upto(periods: Iterable[int], h_max: int, r_max: int):
    """All signatures with h <= h_max and at most r_max periods from ``periods``."""
    from itertools import combinations_with_replacement

    ps = sorted(set(periods))
    for h in range(h_max + 1):
        for r in range(r_max + 1):
            for combo in combinations_with_replacement(ps, r):
                yield Signature(h, combo)
