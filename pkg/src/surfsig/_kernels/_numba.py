"""numba-compiled kernels; semantics match ``_numpy`` exactly."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def closure(table, gens, identity, stop_above):
    n = table.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    seen[identity] = True
    queue[0] = identity
    count = 1
    head = 0
    if gens.shape[0] == 0:
        return seen, count
    while head < count:
        e = queue[head]
        head += 1
        for t in range(gens.shape[0]):
            f = table[e, gens[t]]
            if not seen[f]:
                seen[f] = True
                queue[count] = f
                count += 1
                if count > stop_above:
                    return seen, count
    return seen, count


@njit(cache=True)
def element_orders(table, identity):
    n = table.shape[0]
    orders = np.empty(n, dtype=np.int64)
    for x in range(n):
        p = x
        k = 1
        while p != identity:
            p = table[p, x]
            k += 1
        orders[x] = k
    return orders


@njit(cache=True)
def pair_product_hist(table, a, b):
    hist = np.zeros(table.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        row = a[i]
        for j in range(b.shape[0]):
            hist[table[row, b[j]]] += 1
    return hist


@njit(cache=True)
def convolve_right(table, counts, members):
    out = np.zeros_like(counts)
    for w in range(counts.shape[0]):
        cw = counts[w]
        if cw == 0:
            continue
        for t in range(members.shape[0]):
            out[table[w, members[t]]] += cw
    return out


@njit(cache=True)
def coin_ways(limit, coins):
    ways = np.zeros(limit + 1, dtype=np.int64)
    ways[0] = 1
    for c in coins:
        if c <= 0 or c > limit:
            continue
        for v in range(c, limit + 1):
            s = ways[v] + ways[v - c]
            ways[v] = s if s < 2 else 2
    return ways


@njit(cache=True)
def find_commutator(table, inv, orders, k, xs):
    n = table.shape[0]
    for i in range(xs.shape[0]):
        x = xs[i]
        ix = inv[x]
        for y in range(n):
            c = table[table[table[x, y], ix], inv[y]]
            if orders[c] == k:
                return x, y
    return -1, -1
