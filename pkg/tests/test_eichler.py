from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from surfsig import eichler as eichler_mod
from surfsig.cyclotomic import Cyclotomic
from surfsig.epi import exists_epimorphism
from surfsig.errors import ConventionViolation, InputError
from surfsig.groups import centralizer_order
from surfsig.signature import Signature, parse_signature, riemann_hurwitz_genus
from surfsig.eichler import FixedPointProfile, eichler_trace, fixed_point_profile, surface_character

S = parse_signature


def _lift(x: Cyclotomic, L: int) -> Cyclotomic:
    out = Cyclotomic.rational(L, 0)
    for k, c in enumerate(x.coeffs):
        if c:
            out = out + c * Cyclotomic.zeta(L, k * L // x.m)
    return out


def genus0_triples(G, T, periods):
    out = []
    for sig_p in itertools.combinations_with_replacement(periods, 3):
        sig = Signature(0, sig_p)
        g = riemann_hurwitz_genus(G.order, sig)
        if g < 2:
            continue
        res = exists_epimorphism(G, sig)
        if res.found:
            out.append((sig, res.witness))
    return out


@pytest.fixture(scope="module")
def found7(psl7, T7):
    return genus0_triples(psl7, T7, (2, 3, 4, 7))


@pytest.fixture(scope="module")
def found11(psl11, T11):
    return genus0_triples(psl11, T11, (2, 3, 5, 6, 11))


def test_zero_profile_gives_one():
    for m in (2, 3, 7, 11):
        p = FixedPointProfile(m, {u: 0 for u in range(1, m) if math.gcd(u, m) == 1})
        assert eichler_trace(p) == 1


def test_minimal_example(psl7, T7):
    sig = S("(0;2,3,7)")
    w = exists_epimorphism(psl7, sig).witness
    two = T7.classes[T7.class_id("2A")].rep
    p = fixed_point_profile(psl7, T7, sig, w, two)
    assert p.total == 4
    assert eichler_trace(p).real_part() == -1
    for label in ("7A", "7B"):
        p7 = fixed_point_profile(psl7, T7, sig, w, T7.classes[T7.class_id(label)].rep)
        assert p7.total == 3
        assert sorted(p7.counts) == [1, 2, 3, 4, 5, 6]
    four = T7.classes[T7.class_id("4A")].rep
    assert fixed_point_profile(psl7, T7, sig, w, four).total == 0
    with pytest.raises(InputError):
        fixed_point_profile(psl7, T7, sig, w, psl7.identity)


def test_degrees(psl7, T7):
    for text, deg in (("(0;2,3,7)", 3), ("(0;3,3,4)", 8)):
        sig = S(text)
        w = exists_epimorphism(psl7, sig).witness
        assert surface_character(psl7, T7, sig, w).degree == deg


@pytest.mark.parametrize("which", ["7", "11"])
def test_integrality_and_lefschetz(which, request):
    G = request.getfixturevalue(f"psl{which}")
    T = request.getfixturevalue(f"T{which}")
    found = request.getfixturevalue(f"found{which}")
    assert found
    # every element for the small group, class representatives plus a stride for the larger one
    sigmas = range(G.order) if G.order < 200 else sorted({c.rep for c in T.classes} | set(range(0, G.order, 7)))
    for sig, w in found:
        for s in sigmas:
            if s == G.identity:
                continue
            p = fixed_point_profile(G, T, sig, w, s)
            assert all(isinstance(n, int) and n >= 0 for n in p.counts.values())
            chi = eichler_trace(p)
            assert 2 * chi.real_part() == 2 - p.total
            inv = eichler_trace(fixed_point_profile(G, T, sig, w, G.inv(s)))
            assert (chi + inv).is_rational()
            assert abs(chi.to_complex().real - (1 - p.total / 2)) < 1e-9


def test_class_function(psl7, T7, found7):
    G = psl7
    for sig, w in found7:
        for cls in T7.classes[1:]:
            base = eichler_trace(fixed_point_profile(G, T7, sig, w, cls.rep))
            for x in cls.members[::5]:
                assert eichler_trace(fixed_point_profile(G, T7, sig, w, x)) == base


@pytest.mark.parametrize("which", ["7", "11"])
def test_degree_and_invariants(which, request):
    G = request.getfixturevalue(f"psl{which}")
    T = request.getfixturevalue(f"T{which}")
    for sig, w in request.getfixturevalue(f"found{which}"):
        ch = surface_character(G, T, sig, w)
        assert ch.degree == riemann_hurwitz_genus(G.order, sig)
        L = math.lcm(*(v.m for v in ch.values.values()))
        inner = Cyclotomic.rational(L, 0)
        for cid, v in ch.values.items():
            inner = inner + T.size(cid) * _lift(v, L)
        # invariant differentials on a genus-0 quotient: none
        assert inner.is_rational() and inner.as_rational() == 0


def test_invariants_match_orbit_genus(psl11, T11):
    sig = S("(1;2)")
    w = exists_epimorphism(psl11, sig).witness
    ch = surface_character(psl11, T11, sig, w)
    L = math.lcm(*(v.m for v in ch.values.values()))
    inner = sum((T11.size(c) * _lift(v, L) for c, v in ch.values.items()), Cyclotomic.rational(L, 0))
    assert inner.as_rational() == Fraction(psl11.order * sig.h)


def test_class_size_reading_breaks_integrality(psl7, T7, monkeypatch):
    sig = S("(0;2,3,7)")
    w = exists_epimorphism(psl7, sig).witness
    monkeypatch.setattr(eichler_mod, "centralizer_order", lambda G, x: G.order // centralizer_order(G, x))
    with pytest.raises(ConventionViolation):
        fixed_point_profile(psl7, T7, sig, w, T7.classes[T7.class_id("2A")].rep)


def test_character_json(psl7, T7):
    sig = S("(0;2,3,7)")
    w = exists_epimorphism(psl7, sig).witness
    blob = surface_character(psl7, T7, sig, w).to_json(T7)
    assert blob["degree"] == 3
    assert [v["class"] for v in blob["values"]] == T7.labels
    assert blob["values"][1]["re"] == "-1"


def test_surface_character_rejects_low_genus(psl7, T7):
    sig = S("(0;2,3,7)")
    w = exists_epimorphism(psl7, sig).witness
    with pytest.raises(InputError):
        surface_character(psl7, T7, S("(0;2,3,4)"), w)
