"""Fixed points with rotation constants, and the Eichler trace.

For an action given by a witness (alpha, beta, c) and an automorphism
sigma of order m, the points fixed by sigma with rotation constant zeta^u
are counted through the cone points: c_i contributes when m divides m_i
and sigma is conjugate to c_i^(m_i u / m).  Each such cone point lifts to
|C(sigma)| / m_i fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .classes import ConjugacyClassTable
from .cyclotomic import Cyclotomic, units
from .epi import EpiWitness, verify_witness
from .errors import ConventionViolation, InputError
from .groups import FiniteGroup, centralizer_order
from .signature import Signature, riemann_hurwitz_genus


@dataclass(frozen=True)
class FixedPointProfile:
    m: int
    counts: dict  # u in I(m) -> number of fixed points with rotation constant zeta^u

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def fixed_point_profile(G: FiniteGroup, T: ConjugacyClassTable, sig: Signature, w: EpiWitness, sigma: int) -> FixedPointProfile:
    if sigma == G.identity:
        raise InputError("sigma must be a nontrivial element")
    m = int(G.orders[sigma])
    target = int(T.class_of[sigma])
    cent = centralizer_order(G, sigma)
    counts = {}
    for u in units(m):
        acc = Fraction(0)
        for ci, mi in zip(w.c, sig.periods):
            if mi % m:
                continue
            if int(T.class_of[G.power(ci, mi * u // m)]) == target:
                acc += Fraction(1, mi)
        n = cent * acc
        if n.denominator != 1 or n < 0:
            raise ConventionViolation(f"fixed-point count {n} for u={u} is not a nonnegative integer")
        counts[u] = int(n)
    return FixedPointProfile(m, counts)


def eichler_trace(profile: FixedPointProfile) -> Cyclotomic:
    """1 + sum_u n_u zeta^u / (1 - zeta^u)."""
    m = profile.m
    if m < 2:
        raise InputError("trace formula needs m >= 2")
    chi = Cyclotomic.rational(m, 1)
    for u, n in sorted(profile.counts.items()):
        if n:
            z = Cyclotomic.zeta(m, u)
            chi = chi + n * (z / (1 - z))
    return chi


@dataclass(frozen=True)
class SurfaceCharacter:
    degree: int
    values: dict  # class id -> Cyclotomic

    def to_json(self, T: ConjugacyClassTable) -> dict:
        out = []
        for cid in sorted(self.values):
            v = self.values[cid]
            out.append({
                "class": T.classes[cid].label,
                "conductor": v.m,
                "re": str(v.real_part().as_rational()),
                "cyclotomic": [str(c) for c in v.coeffs],
            })
        return {"degree": self.degree, "values": out}


def surface_character(G: FiniteGroup, T: ConjugacyClassTable, sig: Signature, w: EpiWitness) -> SurfaceCharacter:
    """Trace of G on holomorphic differentials, one value per class."""
    if not verify_witness(G, w):
        raise InputError("witness does not define a surface-kernel epimorphism")
    g = riemann_hurwitz_genus(G.order, sig)
    if g.denominator != 1 or g < 2:
        raise InputError(f"need an integral genus >= 2, got {g}")
    g = int(g)
    values = {}
    for cid, cls in enumerate(T.classes):
        if cls.rep == G.identity:
            values[cid] = Cyclotomic.rational(1, g)
        else:
            values[cid] = eichler_trace(fixed_point_profile(G, T, sig, w, cls.rep))
    return SurfaceCharacter(g, values)
