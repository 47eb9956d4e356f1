"""Brute-force reference implementations used only by the tests.

Nothing here imports the package's algorithms; these work from the
definitions with plain sets and rationals.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm


def det_by_elimination(rows):
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            for j in range(c, n):
                a[i][j] -= f * a[c][j]
    assert det.denominator == 1
    return int(det)


def vandermonde_rows(xs):
    return [[x ** i for x in xs] for i in range(len(xs))]


def brute_m_lcm(k, n):
    out = 1
    for xs in itertools.combinations(range(k), n):
        out = lcm(out, abs(det_by_elimination(vandermonde_rows(xs))))
    return out


def is_lottery(blocks, n, r, p):
    bs = [set(b) for b in blocks]
    return all(any(len(b & set(P)) >= r for b in bs) for P in itertools.combinations(range(n), p))


def brute_min_lottery(n, k, r, p, limit=None):
    """Smallest s such that some s blocks form an (n,k,r,p)-lottery system.

    Each block is reduced to the integer whose bit j says it satisfies the
    j-th p-set; a family of s blocks works iff the OR of its integers is full.
    """
    psets = [set(P) for P in itertools.combinations(range(n), p)]
    satisfied = []
    for b in itertools.combinations(range(n), k):
        sb = set(b)
        satisfied.append(sum(1 << j for j, P in enumerate(psets) if len(sb & P) >= r))
    everything = (1 << len(psets)) - 1
    s = 0
    while limit is None or s <= limit:
        for combo in itertools.combinations(satisfied, s):
            acc = 0
            for x in combo:
                acc |= x
            if acc == everything:
                return s
        s += 1
    return None


def gdd_hit_counts(blocks, parts, N, r):
    """For every r vertices from r distinct parts, the number of blocks
    containing them."""
    counts = {}
    bsets = [set(b) for b in blocks]
    for chosen_parts in itertools.combinations(range(parts), r):
        for zs in itertools.product(range(N), repeat=r):
            vs = {j * N + z for j, z in zip(chosen_parts, zs)}
            counts[tuple(sorted(vs))] = sum(vs <= b for b in bsets)
    return counts


def contains_copy(host_blocks, host_n, pat_blocks, pat_n):
    """Subgraph containment by trying every injection."""
    hs = {frozenset(b) for b in host_blocks}
    for img in itertools.permutations(range(host_n), pat_n):
        if all(frozenset(img[v] for v in b) in hs for b in pat_blocks):
            return True
    return False
