"""Exhaustive checkers for lottery, covering, Turán and design properties.

Every checker enumerates candidate sets in lexicographic order and stops at
the first failure, so a failing ``Verdict`` always carries the
lexicographically least counterexample.
"""
from __future__ import annotations

import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import ParameterError, StructuralError
from .setsystem import Block, Params, SetSystem, mask_of


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Block | None = None
    detail: str = ""

    def __post_init__(self):
        if self.ok and self.witness is not None:
            raise ValueError("a passing verdict carries no witness")
        if not self.ok and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True, None, "ok")


@dataclass(frozen=True)
class PartiteLayout:
    """k parts of N vertices each; vertex (j, z) has index j*N + z."""

    parts: int
    part_size: int

    @property
    def n(self) -> int:
        return self.parts * self.part_size

    def vertex(self, j: int, z: int) -> int:
        return j * self.part_size + z

    def part(self, v: int) -> int:
        return v // self.part_size

    def coordinate(self, v: int) -> tuple[int, int]:
        return divmod(v, self.part_size)


def _first_lottery_failure(masks, n, r, p, first):
    """Lex-least p-subset starting at ``first`` that meets no block in >= r
    vertices, or None."""
    hint = 0
    head = 1 << first
    for rest in itertools.combinations(range(first + 1, n), p - 1):
        P = head | mask_of(rest)
        if masks and (masks[hint] & P).bit_count() >= r:
            continue
        for i, K in enumerate(masks):
            if (K & P).bit_count() >= r:
                hint = i
                break
        else:
            return (first,) + rest
    return None


def _scan(args):
    return _first_lottery_failure(*args)


def _workers(workers: int | None) -> int:
    if workers is None:
        try:
            workers = int(os.environ.get("LOTTERYFORGE_THREADS", "0"))
        except ValueError:
            workers = 0
    return max(workers, 0)


def verify_lottery(sys: SetSystem, params: Params, workers: int | None = None) -> Verdict:
    """Check that every p-subset of ``range(n)`` meets some block in at least
    r vertices.

    The scan is split by the smallest vertex of the p-subset. With
    ``workers > 0`` the slices run in a process pool; the reported witness
    is still the lexicographically least one. ``workers=None`` reads
    ``LOTTERYFORGE_THREADS`` (default 0, sequential).
    """
    if sys.n != params.n or sys.k != params.k:
        raise ParameterError(
            f"system is ({sys.n} vertices, {sys.k}-uniform) but params say n={params.n} k={params.k}"
        )
    n, r, p = params.n, params.r, params.p
    if p > n:
        return PASS
    slices = [(sys.masks, n, r, p, first) for first in range(n - p + 1)]
    nworkers = _workers(workers)
    if nworkers and len(slices) > 1:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(_scan, slices))
        witness = next((w for w in results if w is not None), None)
    else:
        witness = None
        for s in slices:
            witness = _scan(s)
            if witness is not None:
                break
    if witness is None:
        return PASS
    return Verdict(False, witness, f"no block meets this {p}-set in {r} or more vertices")


def verify_covering(sys: SetSystem, r: int) -> Verdict:
    if not 1 <= r <= sys.k:
        raise ParameterError(f"covering size r={r} must lie in [1, {sys.k}]")
    if sys.k > sys.n:
        raise ParameterError(f"block size {sys.k} exceeds {sys.n} vertices")
    return verify_lottery(sys, Params(sys.n, sys.k, r, r))


def verify_turan_property(sys: SetSystem, p: int) -> Verdict:
    """Every p-subset of the vertex set must contain a whole block."""
    if p < sys.k:
        raise ParameterError(f"probe size p={p} is below edge size {sys.k}")
    masks = sys.masks
    for P in itertools.combinations(range(sys.n), p):
        pm = mask_of(P)
        if not any(K & pm == K for K in masks):
            return Verdict(False, P, f"this {p}-set contains no edge")
    return PASS


def verify_gdd(sys: SetSystem, layout: PartiteLayout, r: int) -> Verdict:
    """Every choice of r vertices from r distinct parts must lie in exactly
    one block."""
    if sys.n != layout.n:
        raise ParameterError(f"system has {sys.n} vertices, layout has {layout.n}")
    if not 1 <= r <= layout.parts:
        raise ParameterError(f"r={r} must lie in [1, {layout.parts}]")
    for b in sys.blocks:
        if len(b) != layout.parts or [layout.part(v) for v in b] != list(range(layout.parts)):
            raise StructuralError(f"block {b} is not a transversal of the layout", b)
    hits = Counter(s for b in sys.blocks for s in itertools.combinations(b, r))
    N = layout.part_size
    for parts in itertools.combinations(range(layout.parts), r):
        for zs in itertools.product(range(N), repeat=r):
            chosen = tuple(layout.vertex(j, z) for j, z in zip(parts, zs))
            count = hits.get(chosen, 0)
            if count != 1:
                return Verdict(False, chosen, f"contained in {count} blocks")
    return PASS


def check_patch_coverage(B: SetSystem, m: int, N: int, r: int) -> Verdict:
    """Every r-subset of ``range(m*N)`` whose projection (v // N) takes at
    most r-1 values must lie inside a block of B."""
    if m < 1 or N < 1:
        raise ParameterError(f"need m, N >= 1, got m={m} N={N}")
    if B.n != m * N:
        raise ParameterError(f"system has {B.n} vertices, expected m*N = {m * N}")
    if not 1 <= r <= B.k:
        raise ParameterError(f"r={r} must lie in [1, {B.k}]")
    inside = {s for b in B.blocks for s in itertools.combinations(b, r)}
    for S in itertools.combinations(range(m * N), r):
        if len({v // N for v in S}) <= r - 1 and S not in inside:
            return Verdict(False, S, "repeated-projection set lies in no block")
    return PASS
