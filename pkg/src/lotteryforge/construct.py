"""Constructions: partite power-matrix designs, greedy coverings, patch
families, and the blow-up composition H -> H_N.

In a composition on m base vertices with part size N, base vertex v owns
the clone set X_v = {v*N, ..., v*N + N - 1} and the projection of a vertex
is ``u // N``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import ConstructionDefect, ParameterError, PreconditionError
from .modular import inverse_matrix, m_lcm, power_matrix
from .setsystem import Params, SetSystem
from .verify import PartiteLayout, verify_covering, verify_lottery


def required_modulus(k: int, r: int) -> int:
    """The M with N = 1 (mod M) needed by ``gdd(N, k, r)``; 1 when r == k."""
    return 1 if r == k else m_lcm(k, k - r)


def check_part_size(N: int, k: int, r: int) -> None:
    M = required_modulus(k, r)
    if N < 2 and r < k:
        raise PreconditionError(f"part size N={N} must be at least 2", M)
    if N % M != 1 % M:
        raise PreconditionError(
            f"gdd(N={N}, k={k}, r={r}) requires N ≡ 1 mod {M}", M
        )


def gdd(N: int, k: int, r: int) -> SetSystem:
    """k-partite k-graph on k*N vertices in which any r vertices from r
    distinct parts lie in exactly one block.

    Blocks are the transversals (z_0, ..., z_{k-1}) in the kernel of the
    (k-r) x k matrix [j**i] over Z_N. z_0..z_{r-1} run freely and the rest
    are solved from the Vandermonde block on columns r..k-1.
    """
    if k < 2:
        raise ParameterError(f"need at least 2 parts, got k={k}")
    if not 1 <= r <= k:
        raise ParameterError(f"need 1 <= r <= k, got r={r} k={k}")
    if N < 1:
        raise ParameterError(f"part size must be positive, got N={N}")
    check_part_size(N, k, r)
    layout = PartiteLayout(k, N)
    if r == k:
        return SetSystem(
            k * N, k,
            tuple(tuple(layout.vertex(j, z) for j, z in enumerate(zs))
                  for zs in itertools.product(range(N), repeat=k)),
        )

    A = power_matrix(k, k - r, N)
    # a non-unit determinant here means the congruence check is wrong
    solved_inv = inverse_matrix(A.column_submatrix(range(r, k))).entries
    free_cols = [[row[c] for c in range(r)] for row in A.entries]

    blocks = []
    for free in itertools.product(range(N), repeat=r):
        rhs = [-sum(a * z for a, z in zip(row, free)) % N for row in free_cols]
        tail = tuple(sum(a * b for a, b in zip(row, rhs)) % N for row in solved_inv)
        zs = free + tail
        blocks.append(tuple(layout.vertex(j, z) for j, z in enumerate(zs)))
    return SetSystem(k * N, k, tuple(blocks))


@lru_cache(maxsize=None)
def greedy_covering(n: int, k: int, r: int) -> SetSystem:
    """An (n, k, r) covering: every r-subset of ``range(n)`` inside a block.

    Each step adds the lexicographically least block among those covering
    the most still-uncovered r-subsets.
    """
    if not 1 <= r <= k <= n:
        raise ParameterError(f"need 1 <= r <= k <= n, got n={n} k={k} r={r}")
    index = {s: i for i, s in enumerate(itertools.combinations(range(n), r))}
    candidates = list(itertools.combinations(range(n), k))
    gains = []
    for b in candidates:
        bits = 0
        for s in itertools.combinations(b, r):
            bits |= 1 << index[s]
        gains.append(bits)

    uncovered = (1 << len(index)) - 1
    chosen = []
    while uncovered:
        best, best_gain = -1, 0
        for i, bits in enumerate(gains):
            g = (bits & uncovered).bit_count()
            if g > best_gain:
                best, best_gain = i, g
        chosen.append(candidates[best])
        uncovered &= ~gains[best]

    result = SetSystem(n, k, tuple(chosen))
    verdict = verify_covering(result, r)
    if not verdict.ok:
        raise ConstructionDefect(f"greedy covering misses {verdict.witness}")
    return result


def _patch_parts(m: int, N: int, k: int, r: int):
    """Yield (v, k', block) for every member of every B_{v,k'}, in order."""
    delta = k - r
    for kp in range(delta + 2, k + 1):
        cover = greedy_covering(N, kp, kp - delta)
        extra = k - kp
        for v in range(m):
            base = v * N
            outside = [u for u in range(m * N) if u // N != v]
            tails = [
                t for t in itertools.combinations(outside, extra)
                if len({u // N for u in t}) <= r - 2
            ]
            for c in cover.blocks:
                head = tuple(base + z for z in c)
                for t in tails:
                    yield v, kp, head + t


def patches(m: int, N: int, k: int, r: int) -> SetSystem:
    """Union over base vertices v and k' in [k-r+2, k] of B_{v,k'}.

    A member of B_{v,k'} meets X_v in a block of the (N, k', k'-(k-r))
    greedy covering placed on X_v, and its other k-k' vertices project onto
    at most r-2 base vertices. Empty when r == 1.
    """
    return _patches_with_stats(m, N, k, r)[0]


def _patches_with_stats(m, N, k, r):
    if m < 1:
        raise ParameterError(f"need m >= 1, got m={m}")
    if not 1 <= r <= k:
        raise ParameterError(f"need 1 <= r <= k, got r={r} k={k}")
    if N < k:
        raise PreconditionError(f"patches need part size N >= k, got N={N} k={k}")
    raw = 0
    blocks = set()
    sizes = {}
    delta = k - r
    for kp in range(delta + 2, k + 1):
        sizes[kp] = len(greedy_covering(N, kp, kp - delta))
    for _, _, b in _patch_parts(m, N, k, r):
        raw += 1
        blocks.add(b)
    return SetSystem(m * N, k, tuple(blocks)), raw, sizes


@dataclass(frozen=True)
class CompositionReport:
    """Sizes recorded while composing H (on m vertices) into H_N.

    ``covering_sizes`` maps k' to the size of the covering placed on every
    X_v (the same covering is translated to each part). ``patch_raw`` counts
    B-members before duplicates across (v, k') were merged, and ``overlap``
    counts blocks lying in both A and B.
    """

    m: int
    N: int
    k: int
    r: int
    p: int
    size_H: int
    size_A: int
    size_B: int
    patch_raw: int
    overlap: int
    total: int
    covering_sizes: dict[int, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.m * self.N

    @property
    def density(self) -> Fraction:
        return Fraction(self.total, comb(self.n, self.r))

    def lines(self) -> list[str]:
        d = self.density
        covs = " ".join(f"{kp}:{s}" for kp, s in sorted(self.covering_sizes.items()))
        return [
            f"compose m={self.m} N={self.N} n={self.n} k={self.k} r={self.r} p={self.p}",
            f"size_H={self.size_H} size_A={self.size_A} size_B={self.size_B} "
            f"patch_raw={self.patch_raw} overlap={self.overlap} total={self.total}",
            f"covering_sizes {covs or '-'}",
            f"density {d.numerator}/{d.denominator} ~ {float(d):.6f}",
        ]


def compose(H: SetSystem, params: Params, N: int) -> tuple[SetSystem, CompositionReport]:
    """Build H_N on m*N vertices from an (m, k, r, p)-lottery system H.

    A is the union over blocks e = {v_1 < ... < v_k} of a copy of
    gdd(N, k, r) with part j placed on X_{v_{j+1}}; B is
    ``patches(m, N, k, r)``. H_N = A u B is an (mN, k, r, p)-lottery system.
    """
    m, k, r, p = params.n, params.k, params.r, params.p
    if H.n != m or H.k != k:
        raise ParameterError(f"H is ({H.n} vertices, {H.k}-uniform), params say {params}")
    if N < k:
        raise PreconditionError(f"compose needs part size N >= k, got N={N} k={k}")
    check_part_size(N, k, r)
    verdict = verify_lottery(H, params)
    if not verdict.ok:
        raise PreconditionError(f"H is not a {params}-lottery system: {verdict.witness} fails")

    design = gdd(N, k, r)
    A = set()
    for e in H.blocks:
        for blk in design.blocks:
            # vertex (j, z) of the design goes to e[j]*N + z
            A.add(tuple(e[u // N] * N + u % N for u in blk))
    B, raw, sizes = _patches_with_stats(m, N, k, r)
    overlap = len(A & B.block_set)
    HN = SetSystem(m * N, k, tuple(A | B.block_set))

    report = CompositionReport(
        m=m, N=N, k=k, r=r, p=p,
        size_H=len(H), size_A=len(A), size_B=len(B), patch_raw=raw,
        overlap=overlap, total=len(HN), covering_sizes=sizes,
    )
    if report.size_A != N ** r * len(H):
        raise ConstructionDefect(f"|A| = {report.size_A}, expected {N ** r * len(H)}")
    target = Params.relaxed(m * N, k, r, p)
    post = verify_lottery(HN, target)
    if not post.ok:
        raise ConstructionDefect(f"H_N fails the lottery property at {post.witness}")
    return HN, report
