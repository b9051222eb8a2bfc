"""Pure-numpy kernels. Same call signatures as the numba versions."""

from __future__ import annotations

import numpy as np


def closure(table, gens, identity, stop_above):
    n = table.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    seen[identity] = True
    frontier = np.array([identity], dtype=np.int64)
    gens = np.asarray(gens, dtype=np.int64)
    count = 1
    if gens.size == 0:
        return seen, count
    while frontier.size:
        cand = np.unique(table[frontier][:, gens].ravel())
        cand = cand[~seen[cand]]
        seen[cand] = True
        count += cand.size
        if count > stop_above:
            break
        frontier = cand
    return seen, count


def element_orders(table, identity):
    n = table.shape[0]
    idx = np.arange(n)
    cur = idx.copy()
    orders = np.zeros(n, dtype=np.int64)
    k = 1
    pending = cur != identity
    orders[~pending] = 1
    while pending.any():
        k += 1
        cur[pending] = table[cur[pending], idx[pending]]
        done = pending & (cur == identity)
        orders[done] = k
        pending &= ~done
    return orders


def pair_product_hist(table, a, b):
    n = table.shape[0]
    if len(a) == 0 or len(b) == 0:
        return np.zeros(n, dtype=np.int64)
    prods = table[np.ix_(np.asarray(a), np.asarray(b))].ravel()
    return np.bincount(prods, minlength=n).astype(np.int64)


def convolve_right(table, counts, members):
    out = np.zeros_like(counts)
    nz = np.flatnonzero(counts)
    members = np.asarray(members, dtype=np.int64)
    if nz.size == 0 or members.size == 0:
        return out
    prods = table[np.ix_(nz, members)].ravel()
    weights = np.repeat(counts[nz], members.size)
    np.add.at(out, prods, weights)
    return out


def coin_ways(limit, coins):
    """Representation counts of 0..limit by the coin multiset, saturated at 2."""
    ways = np.zeros(limit + 1, dtype=np.int64)
    ways[0] = 1
    for c in coins:
        c = int(c)
        if c <= 0 or c > limit:
            continue
        for r in range(c):
            view = ways[r::c]
            np.minimum(np.cumsum(view), 2, out=view)
    return ways


def find_commutator(table, inv, orders, k, xs):
    n = table.shape[0]
    ys = np.arange(n)
    for x in xs:
        xy = table[x, ys]
        c = table[table[xy, inv[x]], inv[ys]]
        hit = np.flatnonzero(orders[c] == k)
        if hit.size:
            return int(x), int(ys[hit[0]])
    return -1, -1
