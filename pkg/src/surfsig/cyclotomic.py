"""Exact arithmetic in Q(zeta_m).

Elements are rational polynomials in zeta = exp(2 pi i / m), reduced modulo
the m-th cyclotomic polynomial, so equality is coefficient equality.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

Poly = list  # list[Fraction], lowest degree first


def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Poly, Poly]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] -= f * y
        _trim(a)
    return _trim(q), a


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Phi_m as coefficients, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be >= 1")
    num: Poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, r = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not r
    return tuple(num)


def units(m: int) -> list[int]:
    """I(m): residues 1 <= u < m coprime to m (just [1] when m = 1)."""
    if m == 1:
        return [0]
    return [u for u in range(1, m) if gcd(u, m) == 1]


class Cyclotomic:
    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable = ()):
        if m < 1:
            raise ValueError("conductor must be >= 1")
        phi = cyclotomic_polynomial(m)
        p = [Fraction(c) for c in coeffs]
        # fold zeta^k for k >= m back using zeta^m = 1 before reducing
        folded = [Fraction(0)] * m
        for k, c in enumerate(p):
            folded[k % m] += c
        _, r = _poly_divmod(folded, phi)
        r = r + [Fraction(0)] * (m - len(r))
        self.m = m
        self.coeffs = tuple(r[:m])

    # construction ---------------------------------------------------------
    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclotomic":
        c = [0] * m
        c[k % m] = 1
        return cls(m, c)

    @classmethod
    def rational(cls, m: int, q) -> "Cyclotomic":
        return cls(m, [q])

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError(f"conductor mismatch {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, [other])
        return NotImplemented

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.m, _poly_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Extended Euclid against Phi_m."""
        a = _trim(list(self.coeffs))
        if not a:
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = list(cyclotomic_polynomial(self.m)), a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element not invertible")  # cannot happen in a field
        return Cyclotomic(self.m, [c / r1[0] for c in s1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (Cyclotomic, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    # structure ---------------------------------------------------------------
    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta -> zeta^k (k coprime to m)."""
        if gcd(k, self.m) != 1:
            raise ValueError("Galois exponent must be a unit")
        c = [Fraction(0)] * self.m
        for i, a in enumerate(self.coeffs):
            c[(i * k) % self.m] += a
        return Cyclotomic(self.m, c)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.m if self.m > 1 else 1)

    def real_part(self) -> "Cyclotomic":
        return (self + self.conjugate()) * Fraction(1, 2)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum((float(c) * z**k for k, c in enumerate(self.coeffs)), 0j)

    def __repr__(self):
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic({self.m}: {' + '.join(terms) or '0'})"
