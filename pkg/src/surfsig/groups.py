"""Materialized finite groups: PSL(2,p) and permutation groups.

Elements are integer indices ``0..|G|-1`` in the sorted order of their
canonical payloads.  Groups of order at most ``TABLE_LIMIT`` carry a dense
multiplication table; larger ones multiply payloads on demand.
"""

from __future__ import annotations

import re
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import InputError

TABLE_LIMIT = 1000
PSL_MAX_P = 31
PERM_CAP = 20000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class _Psl2Law:
    """2x2 matrices mod p, payload row-major (a, b, c, d), modulo +-I."""

    def __init__(self, p: int):
        self.p = p
        self.width = 4

    def canonical(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=np.int64) % self.p
        single = m.ndim == 1
        m = np.atleast_2d(m)
        nz = m != 0
        first = m[np.arange(len(m)), nz.argmax(axis=1)]
        flip = first > (self.p - 1) // 2
        out = m.copy()
        out[flip] = (-out[flip]) % self.p
        return out[0] if single else out

    def compose(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        y = np.atleast_2d(y)
        a, b, c, d = x[:, 0], x[:, 1], x[:, 2], x[:, 3]
        e, f, g, h = y[:, 0], y[:, 1], y[:, 2], y[:, 3]
        prod = np.stack([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], axis=1)
        return self.canonical(prod)

    def invert(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        adj = np.stack([x[:, 3], -x[:, 1], -x[:, 2], x[:, 0]], axis=1)
        return self.canonical(adj)

    def codes(self, m: np.ndarray) -> np.ndarray:
        m = np.atleast_2d(m)
        p = self.p
        return ((m[:, 0] * p + m[:, 1]) * p + m[:, 2]) * p + m[:, 3]

    def to_jsonable(self, row: np.ndarray):
        a, b, c, d = (int(v) for v in row)
        return [[a, b], [c, d]]


class _PermLaw:
    """Image arrays on {0..n-1}; ``x*y`` applies x first, then y."""

    def __init__(self, degree: int):
        self.degree = degree
        self.width = degree

    def compose(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        y = np.atleast_2d(y)
        return np.take_along_axis(y, x, axis=1)

    def invert(self, x: np.ndarray) -> np.ndarray:
        return np.argsort(np.atleast_2d(x), axis=1)

    def codes(self, m: np.ndarray) -> np.ndarray:
        m = np.atleast_2d(m)
        base = max(self.degree, 1)
        out = np.zeros(len(m), dtype=object if base ** self.degree >= 2**62 else np.int64)
        for col in range(self.degree):
            out = out * base + m[:, col]
        return out

    def to_jsonable(self, row: np.ndarray):
        return [int(v) for v in row]


class FiniteGroup:
    """A fully materialized finite group on element indices.

    Built through :func:`build_psl2` or :func:`parse_permutation_group`
    rather than directly.  Treated as immutable once constructed; derived
    data (class tables, subgroup lists) is memoized in ``cache``.
    """

    def __init__(self, name: str, law, payloads: np.ndarray, generators: Sequence[np.ndarray] = ()):
        payloads = np.asarray(payloads, dtype=np.int64).reshape(len(payloads), law.width)
        codes = law.codes(payloads)
        order = np.argsort(codes, kind="stable")
        self.name = name
        self.law = law
        self.elements = payloads[order]
        self._codes = codes[order]
        if len(self._codes) > 1 and np.any(self._codes[1:] == self._codes[:-1]):
            raise ValueError("duplicate canonical payloads")
        self.order = len(self.elements)
        self.cache: dict = {}

        if isinstance(law, _Psl2Law):
            ident = np.array([1, 0, 0, 1])
        else:
            ident = np.arange(law.width)
        self.identity = self.index_of(ident)

        self.table = None
        if self.order <= TABLE_LIMIT:
            n = self.order
            left = np.repeat(self.elements, n, axis=0)
            right = np.tile(self.elements, (n, 1))
            self.table = self._lookup(law.compose(left, right)).reshape(n, n)
        self.inverses = self._lookup(law.invert(self.elements))
        if self.table is not None:
            self.orders = _kernels.element_orders(self.table, self.identity)
        else:
            self.orders = self._orders_slow()
        self.generators = tuple(int(self.index_of(g)) for g in generators)

    # -- element lookup ----------------------------------------------------
    def _lookup(self, payloads: np.ndarray) -> np.ndarray:
        codes = self.law.codes(payloads)
        pos = np.searchsorted(self._codes, codes)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self._codes[pos] == codes):
            raise ValueError("payload is not an element of this group")
        return pos.astype(np.int64)

    def index_of(self, payload) -> int:
        payload = np.asarray(payload, dtype=np.int64).reshape(1, self.law.width)
        if isinstance(self.law, _Psl2Law):
            payload = self.law.canonical(payload)
        return int(self._lookup(payload)[0])

    def payload(self, x: int):
        return self.law.to_jsonable(self.elements[x])

    # -- arithmetic --------------------------------------------------------
    def mul(self, x: int, y: int) -> int:
        if self.table is not None:
            return int(self.table[x, y])
        prod = self.law.compose(self.elements[x], self.elements[y])
        return int(self._lookup(prod)[0])

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    def prod(self, xs: Iterable[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def power(self, x: int, k: int) -> int:
        k %= int(self.orders[x])
        acc = self.identity
        base = x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def conjugate(self, x: int, g: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def _orders_slow(self) -> np.ndarray:
        orders = np.ones(self.order, dtype=np.int64)
        idx = np.arange(self.order)
        cur = idx.copy()
        pending = cur != self.identity
        k = 1
        while pending.any():
            k += 1
            live = idx[pending]
            cur[live] = self._lookup(self.law.compose(self.elements[cur[live]], self.elements[live]))
            done = live[cur[live] == self.identity]
            orders[done] = k
            pending[done] = False
        return orders

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["cache"] = {}
        return state


# -- constructors ------------------------------------------------------------

def build_psl2(p: int) -> FiniteGroup:
    """PSL(2,p) for a prime 5 <= p <= 31."""
    if not isinstance(p, (int, np.integer)) or not _is_prime(int(p)) or not 5 <= p <= PSL_MAX_P:
        raise InputError(f"PSL(2,p) needs a prime 5 <= p <= {PSL_MAX_P}, got {p!r}")
    p = int(p)
    law = _Psl2Law(p)
    r = np.arange(p)
    a, b, c = (m.ravel() for m in np.meshgrid(r, r, r, indexing="ij"))
    inv_mod = np.array([0] + [pow(int(v), -1, p) for v in range(1, p)])
    # a != 0: d = (1 + b c) / a
    keep = a != 0
    a1, b1, c1 = a[keep], b[keep], c[keep]
    d1 = ((1 + b1 * c1) * inv_mod[a1]) % p
    # a == 0: -b c = 1, d free
    bb = np.arange(1, p)
    cc = (-inv_mod[bb]) % p
    b2 = np.repeat(bb, p)
    c2 = np.repeat(cc, p)
    d2 = np.tile(r, p - 1)
    a2 = np.zeros_like(b2)
    sl2 = np.concatenate([np.stack([a1, b1, c1, d1], axis=1), np.stack([a2, b2, c2, d2], axis=1)])
    payloads = np.unique(law.canonical(sl2), axis=0)
    gens = [np.array([1, 1, 0, 1]), np.array([0, p - 1, 1, 0])]
    return FiniteGroup(f"psl2:{p}", law, payloads, gens)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(line: str, degree: int) -> np.ndarray:
    text = line.strip()
    img = np.arange(degree)
    if text in ("()", ""):
        return img
    if _CYCLE_RE.sub("", text).strip():
        raise InputError(f"malformed cycle notation: {line!r}")
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        toks = body.replace(",", " ").split()
        try:
            pts = [int(t) for t in toks]
        except ValueError:
            raise InputError(f"non-integer point in {line!r}") from None
        for q in pts:
            if not 0 <= q < degree:
                raise InputError(f"point {q} outside 0..{degree - 1}")
            if q in seen:
                raise InputError(f"point {q} repeated in {line!r}")
            seen.add(q)
        for s, t in zip(pts, pts[1:] + pts[:1]):
            img[s] = t
    return img


def perm_group(degree: int, generators: Sequence[Sequence[int]], name: str = "perm", cap: int = PERM_CAP) -> FiniteGroup:
    """Closure of image-array generators under composition."""
    law = _PermLaw(degree)
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    for g in gens:
        if sorted(g.tolist()) != list(range(degree)):
            raise InputError(f"generator {g.tolist()} is not a bijection on 0..{degree - 1}")
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [np.array(ident, dtype=np.int64)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = g[e]  # e then g
                key = tuple(f.tolist())
                if key not in seen:
                    seen.add(key)
                    if len(seen) > cap:
                        raise InputError(f"closure exceeds size cap {cap}")
                    nxt.append(f)
        frontier = nxt
    payloads = np.array(sorted(seen), dtype=np.int64).reshape(len(seen), degree)
    return FiniteGroup(name, law, payloads, gens)


def parse_permutation_group(text: str, name: str = "perm", cap: int = PERM_CAP) -> FiniteGroup:
    """Read the ``degree N`` + cycle-notation generator format."""
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise InputError(f"first line must be 'degree N', got {line!r}")
            degree = int(m.group(1))
            continue
        gens.append(_parse_cycles(line, degree))
    if degree is None:
        raise InputError("missing 'degree N' line")
    return perm_group(degree, gens, name=name, cap=cap)


def load_permutation_group(path: str | Path, cap: int = PERM_CAP) -> FiniteGroup:
    path = Path(path)
    return parse_permutation_group(path.read_text(encoding="utf-8"), name=path.stem, cap=cap)


# -- element-level operations -----------------------------------------------

def element_order(G: FiniteGroup, x: int) -> int:
    return int(G.orders[x])


def order_census(G: FiniteGroup) -> dict[int, int]:
    return dict(sorted(Counter(int(o) for o in G.orders).items()))


def _closure_slow(G: FiniteGroup, gens: Sequence[int], stop_above: int) -> np.ndarray:
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    stack = [G.identity]
    count = 1
    while stack and count <= stop_above:
        e = stack.pop()
        for g in gens:
            f = G.mul(e, g)
            if not seen[f]:
                seen[f] = True
                count += 1
                stack.append(f)
    return seen


def closure_mask(G: FiniteGroup, gens: Sequence[int], stop_above: int | None = None) -> np.ndarray:
    """Boolean membership mask of the subgroup generated by ``gens``.

    With ``stop_above`` the walk may stop early once more than that many
    elements are known; the mask is then partial.
    """
    stop = G.order if stop_above is None else stop_above
    gens = [int(g) for g in gens]
    if G.table is not None:
        mask, _ = _kernels.closure(G.table, gens, G.identity, stop)
        return mask
    return _closure_slow(G, gens, stop)


def generated_subgroup(G: FiniteGroup, gens: Sequence[int]) -> frozenset[int]:
    return frozenset(np.flatnonzero(closure_mask(G, gens)).tolist())


def generates(G: FiniteGroup, gens: Sequence[int]) -> bool:
    # a proper subgroup has at most |G|/2 elements
    mask = closure_mask(G, gens, stop_above=G.order // 2)
    return G.order == 1 or int(mask.sum()) > G.order // 2


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """x y x^-1 y^-1."""
    return G.mul(G.mul(G.mul(x, y), G.inv(x)), G.inv(y))


def centralizer_order(G: FiniteGroup, x: int) -> int:
    if G.table is not None:
        return int(np.count_nonzero(G.table[:, x] == G.table[x, :]))
    return sum(1 for g in range(G.order) if G.mul(g, x) == G.mul(x, g))


def extend_homomorphism(G: FiniteGroup, gens: Sequence[int], H: FiniteGroup, images: Sequence[int]) -> np.ndarray | None:
    """Map G -> H sending gens[i] -> images[i], or None if not well defined.

    ``gens`` must generate G.  The map is grown along the Cayley graph and
    every edge is checked, so a returned array is a homomorphism.
    """
    phi = np.full(G.order, -1, dtype=np.int64)
    phi[G.identity] = H.identity
    stack = [G.identity]
    while stack:
        e = stack.pop()
        for g, h in zip(gens, images):
            f = G.mul(e, g)
            val = H.mul(int(phi[e]), h)
            if phi[f] < 0:
                phi[f] = val
                stack.append(f)
            elif phi[f] != val:
                return None
    if np.any(phi < 0):
        raise ValueError("gens do not generate G")
    return phi
