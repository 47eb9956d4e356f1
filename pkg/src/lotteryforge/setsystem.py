"""Uniform set systems (k-graphs) and the structural operations on them.

Vertices are dense 0-based integers. Every ``SetSystem`` is stored in
canonical form: each block is an ascending tuple and the block sequence is
sorted and free of duplicates. Operations always return canonical systems.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .errors import CapacityError, ParameterError, StructuralError

Block = tuple[int, ...]

DEFAULT_VERTEX_BUDGET = 10


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> Block:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Params:
    """Lottery parameters (n, k, r, p).

    Requires ``1 <= r <= k <= n`` and ``r <= p <= n``. Use :meth:`relaxed`
    to allow ``p > n``, where the lottery property holds vacuously.
    """

    n: int
    k: int
    r: int
    p: int
    allow_vacuous: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        n, k, r, p = self.n, self.k, self.r, self.p
        if not all(isinstance(x, int) for x in (n, k, r, p)):
            raise ParameterError("parameters must be integers")
        if not 1 <= r <= k <= n:
            raise ParameterError(f"need 1 <= r <= k <= n, got n={n} k={k} r={r}")
        if p < r:
            raise ParameterError(f"need r <= p, got r={r} p={p}")
        if p > n and not self.allow_vacuous:
            raise ParameterError(f"need p <= n, got p={p} n={n}")

    @classmethod
    def relaxed(cls, n: int, k: int, r: int, p: int) -> "Params":
        return cls(n, k, r, p, allow_vacuous=True)

    @classmethod
    def parse(cls, text: str) -> "Params":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 4:
            raise ParameterError(f"expected n,k,r,p but got {text!r}")
        try:
            n, k, r, p = (int(s) for s in parts)
        except ValueError:
            raise ParameterError(f"non-integer in parameters {text!r}") from None
        return cls(n, k, r, p)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.r, self.p)

    def __str__(self) -> str:
        return f"({self.n},{self.k},{self.r},{self.p})"


@dataclass(frozen=True)
class SetSystem:
    """A k-uniform system of blocks over the vertex set ``range(n)``.

    The constructor validates and canonicalizes ``blocks``; duplicates
    collapse silently.
    """

    n: int
    k: int
    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ParameterError(f"negative size: n={self.n} k={self.k}")
        canon = set()
        for raw in self.blocks:
            block = tuple(sorted(raw))
            if len(block) != self.k or len(set(block)) != self.k:
                raise StructuralError(
                    f"block {tuple(raw)} does not have {self.k} distinct vertices", tuple(raw)
                )
            if block and (block[0] < 0 or block[-1] >= self.n):
                raise StructuralError(f"block {block} has a vertex outside [0, {self.n})", block)
            canon.add(block)
        object.__setattr__(self, "blocks", tuple(sorted(canon)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __contains__(self, block: Sequence[int]) -> bool:
        return tuple(sorted(block)) in self.block_set

    @cached_property
    def block_set(self) -> frozenset[Block]:
        return frozenset(self.blocks)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Blocks as vertex bitmasks, in block order."""
        return tuple(mask_of(b) for b in self.blocks)

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    def covered_vertices(self) -> Block:
        return vertices_of(mask_of(v for b in self.blocks for v in b))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for b in self.blocks:
            for v in b:
                deg[v] += 1
        return deg

    @classmethod
    def complete(cls, n: int, k: int) -> "SetSystem":
        """All k-subsets of ``range(n)``; ``complete(p, r)`` is K_p^r."""
        return cls(n, k, tuple(itertools.combinations(range(n), k)))

    @classmethod
    def empty(cls, n: int, k: int) -> "SetSystem":
        return cls(n, k, ())


@dataclass(frozen=True)
class ForbiddenFamily:
    """A list of r-uniform forbidden patterns, each taken up to isomorphism."""

    r: int
    members: tuple[SetSystem, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for f in self.members:
            if f.k != self.r:
                raise ParameterError(
                    f"family of arity {self.r} cannot hold a {f.k}-uniform member"
                )

    @cached_property
    def pair_covering(self) -> bool:
        """Whether every member is pair-covering (vacuously true if empty)."""
        if self.r < 2:
            return not self.members
        return all(is_pair_covering(f) for f in self.members)

    @classmethod
    def clique(cls, p: int, r: int) -> "ForbiddenFamily":
        return cls(r, (SetSystem.complete(p, r),))


def shadow(sys: SetSystem, r: int) -> SetSystem:
    if not 1 <= r <= sys.k:
        raise ParameterError(f"shadow size r={r} must lie in [1, {sys.k}]")
    subsets = {s for b in sys.blocks for s in itertools.combinations(b, r)}
    return SetSystem(sys.n, r, tuple(subsets))


def complement_system(sys: SetSystem) -> SetSystem:
    present = sys.block_set
    absent = (b for b in itertools.combinations(range(sys.n), sys.k) if b not in present)
    return SetSystem(sys.n, sys.k, tuple(absent))


def is_pair_covering(sys: SetSystem) -> bool:
    """True iff every two non-isolated vertices share a block.

    Vertices that lie in no block are ignored.
    """
    if sys.k < 2:
        raise ParameterError("pair-covering needs block size at least 2")
    pairs = {pr for b in sys.blocks for pr in itertools.combinations(b, 2)}
    live = sys.covered_vertices()
    return len(pairs) == comb(len(live), 2)


def find_embedding(
    host: SetSystem, pattern: SetSystem, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> dict[int, int] | None:
    """Search for an injection of pattern vertices into host vertices that
    maps every pattern block onto a host block.

    Returns the mapping, or None when the pattern does not embed. Pattern
    vertices are tried in decreasing-degree order. A host vertex is a
    candidate only if its degree is at least the pattern vertex's degree and
    it shares a host block with every already-placed image it must share one
    with.
    """
    if host.k != pattern.k:
        raise ParameterError(f"uniformity mismatch: host {host.k}, pattern {pattern.k}")
    if pattern.n > vertex_budget:
        raise CapacityError(f"pattern has {pattern.n} vertices, budget is {vertex_budget}")
    if pattern.n > host.n:
        return None
    if not pattern.blocks:
        return {v: v for v in range(pattern.n)}
    if len(pattern) > len(host):
        return None

    pdeg = pattern.degrees()
    hdeg = host.degrees()
    order = sorted(range(pattern.n), key=lambda v: (-pdeg[v], v))
    position = {v: i for i, v in enumerate(order)}

    # blocks to check once their last vertex (in search order) is placed
    closing: list[list[Block]] = [[] for _ in order]
    for b in pattern.blocks:
        closing[max(position[v] for v in b)].append(b)

    # pattern pairs sharing a block must map to host pairs sharing a block
    need_pairs: list[list[int]] = [[] for _ in order]
    if pattern.k >= 2:
        ppairs = {pr for b in pattern.blocks for pr in itertools.combinations(b, 2)}
        for a, b in ppairs:
            early, late = sorted((a, b), key=position.__getitem__)
            need_pairs[position[late]].append(early)
    nbr = [0] * host.n
    for b in host.blocks:
        m = mask_of(b)
        for v in b:
            nbr[v] |= m

    host_masks = host.mask_set
    image: dict[int, int] = {}

    def extend(i: int, used: int) -> bool:
        if i == len(order):
            return True
        pv = order[i]
        cand = ((1 << host.n) - 1) & ~used
        for u in need_pairs[i]:
            cand &= nbr[image[u]]
        for hv in vertices_of(cand):
            if hdeg[hv] < pdeg[pv]:
                continue
            image[pv] = hv
            if all(mask_of(image[u] for u in b) in host_masks for b in closing[i]):
                if extend(i + 1, used | (1 << hv)):
                    return True
            del image[pv]
        return False

    return dict(image) if extend(0, 0) else None


def contains_subgraph(
    host: SetSystem, pattern: SetSystem, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> bool:
    return find_embedding(host, pattern, vertex_budget) is not None


def is_family_free(host: SetSystem, fam: ForbiddenFamily) -> bool:
    if host.k != fam.r:
        raise ParameterError(f"arity mismatch: host {host.k}, family {fam.r}")
    return not any(contains_subgraph(host, f) for f in fam.members)


def blow_up(sys: SetSystem, N: int) -> SetSystem:
    """Replace vertex v by clones v*N .. v*N+N-1 and each block by all
    N**k clone choices."""
    if N < 1:
        raise ParameterError(f"clone count must be positive, got {N}")
    clones = [range(v * N, v * N + N) for v in range(sys.n)]
    blocks = (
        choice for b in sys.blocks for choice in itertools.product(*(clones[v] for v in b))
    )
    return SetSystem(sys.n * N, sys.k, tuple(blocks))
