"""Minimum lottery systems: exact branch-and-bound, greedy upper bounds,
the shadow lower bound, and density reports with exact rationals.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

from .errors import ConstructionDefect, ParameterError
from .setsystem import Params, SetSystem, mask_of
from .verify import verify_lottery


@dataclass(frozen=True)
class BoundPair:
    """Bracket ``lower <= L <= upper`` with a certificate for the upper side.

    ``complete`` means the search finished, so lower == upper is the exact
    minimum and ``certificate`` attains it.
    """

    params: Params
    lower: int
    upper: int
    certificate: SetSystem
    lower_method: str
    upper_method: str
    complete: bool
    nodes: int = 0

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")
        if len(self.certificate) != self.upper:
            raise ValueError("certificate size does not match the upper bound")

    @property
    def value(self) -> int | None:
        return self.upper if self.complete else None


class _Budget(Exception):
    pass


class _Instance:
    """Bit tables for one parameter set: p-subsets are bit positions,
    candidate blocks are indexed in lexicographic order."""

    def __init__(self, params: Params):
        n, k, r, p = params.as_tuple()
        self.params = params
        self.blocks = list(itertools.combinations(range(n), k))
        psets = list(itertools.combinations(range(n), p)) if p <= n else []
        self.psets = psets
        block_masks = [mask_of(b) for b in self.blocks]
        pset_masks = [mask_of(P) for P in psets]
        self.sat = [0] * len(self.blocks)
        self.hitting: list[list[int]] = [[] for _ in psets]
        for i, K in enumerate(block_masks):
            bits = 0
            for j, P in enumerate(pset_masks):
                if (K & P).bit_count() >= r:
                    bits |= 1 << j
                    self.hitting[j].append(i)
            self.sat[i] = bits
        self.full = (1 << len(psets)) - 1
        # p-sets that share a satisfying block with p-set j
        self.friends = [0] * len(psets)
        for j, hit in enumerate(self.hitting):
            bits = 0
            for i in hit:
                bits |= self.sat[i]
            self.friends[j] = bits
        self.max_gain = max((s.bit_count() for s in self.sat), default=0)

    def packing_bound(self, uncovered: int) -> int:
        """Size of a greedy set of uncovered p-sets, no two satisfied by a
        common block; each needs its own block."""
        count = 0
        while uncovered:
            j = (uncovered & -uncovered).bit_length() - 1
            uncovered &= ~self.friends[j]
            count += 1
        return count

    def counting_bound(self) -> int:
        if not self.full:
            return 0
        return max(ceil(self.full.bit_count() / self.max_gain), self.packing_bound(self.full))


def greedy_lottery(params: Params) -> SetSystem:
    """Greedy (n, k, r, p)-lottery system.

    Adds, one at a time, the lexicographically least k-subset that satisfies
    the most not-yet-satisfied p-subsets.
    """
    inst = _Instance(params)
    return _greedy(inst)


def _greedy(inst: _Instance) -> SetSystem:
    params = inst.params
    uncovered = inst.full
    chosen = []
    while uncovered:
        best, best_gain = -1, 0
        for i, bits in enumerate(inst.sat):
            g = (bits & uncovered).bit_count()
            if g > best_gain:
                best, best_gain = i, g
        chosen.append(inst.blocks[best])
        uncovered &= ~inst.sat[best]
    result = SetSystem(params.n, params.k, tuple(chosen))
    verdict = verify_lottery(result, params)
    if not verdict.ok:
        raise ConstructionDefect(f"greedy lottery misses {verdict.witness}")
    return result


def exact_min_lottery(
    params: Params,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
    symmetry_break: bool = False,
) -> BoundPair:
    """Exact L(n, k, r, p) by iterative deepening on the system size.

    At each node the lexicographically least unsatisfied p-set is chosen and
    the search branches over the blocks meeting it in at least r vertices,
    in lexicographic order. A block already explored at a node is excluded
    from its later siblings. A node is pruned when the remaining p-sets
    cannot be finished within the size limit, judged by the best single
    block gain and by a greedy packing of p-sets no block satisfies together.

    With ``symmetry_break`` the first block is fixed to {0, ..., k-1}; the
    value is unchanged, only the certificate may differ.

    If a budget runs out the result is an incomplete bracket whose lower
    side is the largest size proven infeasible plus one.
    """
    inst = _Instance(params)
    greedy = _greedy(inst)
    upper = len(greedy)
    lower = inst.counting_bound()
    nodes = 0
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    sat, hitting = inst.sat, inst.hitting

    def search(uncovered: int, left: int, excluded: frozenset, chosen: list) -> list | None:
        nonlocal nodes
        if not uncovered:
            return list(chosen)
        if left == 0:
            return None
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _Budget
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _Budget
        gains = [(sat[i] & uncovered).bit_count() for i in range(len(sat)) if i not in excluded]
        best = max(gains, default=0)
        if best == 0 or ceil(uncovered.bit_count() / best) > left:
            return None
        if inst.packing_bound(uncovered) > left:
            return None
        target = (uncovered & -uncovered).bit_length() - 1
        tried = set(excluded)
        for i in hitting[target]:
            if i in tried:
                continue
            chosen.append(i)
            found = search(uncovered & ~sat[i], left - 1, frozenset(tried), chosen)
            chosen.pop()
            if found is not None:
                return found
            tried.add(i)
        return None

    def attempt(size: int) -> list | None:
        if symmetry_break and inst.full:
            first = 0  # {0, ..., k-1} is the lexicographically first block
            if size == 0:
                return None
            return search(inst.full & ~sat[first], size - 1, frozenset(), [first])
        return search(inst.full, size, frozenset(), [])

    size = lower
    try:
        while size < upper:
            found = attempt(size)
            if found is not None:
                cert = SetSystem(params.n, params.k, tuple(inst.blocks[i] for i in found))
                if not verify_lottery(cert, params).ok:
                    raise ConstructionDefect(f"search certificate of size {size} is invalid")
                return BoundPair(params, size, size, cert, "exhaustion", "search", True, nodes)
            size += 1
    except _Budget:
        return BoundPair(params, size, upper, greedy, "exhaustion", "greedy", False, nodes)
    return BoundPair(params, upper, upper, greedy, "exhaustion", "greedy", True, nodes)


def exact_turan(n: int, p: int, r: int, **budget) -> BoundPair:
    """T(n, p, r) = L(n, r, r, p)."""
    return exact_min_lottery(Params(n, r, r, p), **budget)


def exact_covering(n: int, k: int, r: int, **budget) -> BoundPair:
    """C(n, k, r) = L(n, k, r, r)."""
    return exact_min_lottery(Params(n, k, r, r), **budget)


def turan_lower_bound(n: int, k: int, r: int, p: int, T_value: int) -> Fraction:
    """L(n, k, r, p) >= T(n, p, r) / C(k, r): the r-shadow of a lottery
    system has the Turán p-property and each block casts C(k, r) r-sets."""
    if not 1 <= r <= k:
        raise ParameterError(f"need 1 <= r <= k, got k={k} r={r}")
    return Fraction(T_value, comb(k, r))


def turan_number_r2(n: int, p: int) -> int:
    """T(n, p, 2) from Turán's theorem: the complement of the balanced
    complete (p-1)-partite graph on n vertices."""
    if p < 2:
        raise ParameterError(f"need p >= 2, got p={p}")
    if p > n:
        return 0
    q, rem = divmod(n, p - 1)
    sizes = [q + 1] * rem + [q] * (p - 1 - rem)
    return sum(comb(s, 2) for s in sizes)


def limit_density_r2(k: int, p: int) -> Fraction:
    """lim L(n, k, 2, p) / C(n, 2) = 1 / ((p - 1) C(k, 2))."""
    if k < 2 or p < 2:
        raise ParameterError(f"need k, p >= 2, got k={k} p={p}")
    return Fraction(1, (p - 1) * comb(k, 2))


def covering_limit_density(k: int, r: int) -> Fraction:
    """lim C(n, k, r) / C(n, r) = 1 / C(k, r)."""
    if not 1 <= r <= k:
        raise ParameterError(f"need 1 <= r <= k, got k={k} r={r}")
    return Fraction(1, comb(k, r))


def conjectured_limit_density_k4_r3(p: int) -> Fraction:
    """Conjectural value 1/(p-1)^2 of lim L(n, 4, 3, p) / C(n, 3)."""
    if p < 3:
        raise ParameterError(f"need p >= 3, got p={p}")
    return Fraction(1, (p - 1) ** 2)


def conjectured_turan_density_r3(p: int) -> Fraction:
    """Turán's conjectured t(p, 3) = 4/(p-1)^2."""
    if p < 3:
        raise ParameterError(f"need p >= 3, got p={p}")
    return Fraction(4, (p - 1) ** 2)


@dataclass(frozen=True)
class DensityReport:
    """One row of a density table. All densities are exact rationals."""

    params: Params
    turan_value: int
    turan_exact: bool
    lower: Fraction
    upper: int
    exact: int | None
    density: Fraction
    references: dict[str, Fraction] = field(default_factory=dict)

    @property
    def lower_int(self) -> int:
        return ceil(self.lower)

    @property
    def best(self) -> int:
        return self.exact if self.exact is not None else self.upper


def reference_limits(k: int, r: int, p: int) -> dict[str, Fraction]:
    """Known or conjectured limits of L(n, k, r, p)/C(n, r), keyed by label.
    Conjectural entries are labelled as such."""
    refs = {}
    if r == p:
        refs["covering limit 1/C(k,r)"] = covering_limit_density(k, r)
    if r == 2:
        refs["r=2 limit 1/((p-1)C(k,2))"] = limit_density_r2(k, p)
    if k == 4 and r == 3 and p >= 3:
        refs["conjectural l(4,3,p) 1/(p-1)^2"] = conjectured_limit_density_k4_r3(p)
    if k == 3 and r == 3 and p >= 3:
        refs["conjectural Turán t(p,3) 4/(p-1)^2"] = conjectured_turan_density_r3(p)
    return refs


def density_row(params: Params, max_nodes: int | None = None) -> DensityReport:
    n, k, r, p = params.as_tuple()
    if r == 2:
        T, T_exact = turan_number_r2(n, p), True
    else:
        tb = exact_min_lottery(Params.relaxed(n, r, r, p), max_nodes=max_nodes)
        T, T_exact = tb.lower, tb.complete
    lower = turan_lower_bound(n, k, r, p, T)
    result = exact_min_lottery(params, max_nodes=max_nodes)
    exact = result.value
    best = exact if exact is not None else result.upper
    return DensityReport(
        params=params,
        turan_value=T,
        turan_exact=T_exact,
        lower=lower,
        upper=result.upper,
        exact=exact,
        density=Fraction(best, comb(n, r)),
        references=reference_limits(k, r, p),
    )


def density_table(k: int, r: int, p: int, ns, max_nodes: int | None = None) -> list[DensityReport]:
    return [density_row(Params.relaxed(n, k, r, p), max_nodes) for n in ns]
