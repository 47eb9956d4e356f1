import itertools
import random

import pytest

from lotteryforge import (
    ForbiddenFamily,
    ParameterError,
    Params,
    PartiteLayout,
    SetSystem,
    StructuralError,
    Verdict,
    check_patch_coverage,
    complement_system,
    gdd,
    greedy_covering,
    is_family_free,
    patches,
    shadow,
    verify_covering,
    verify_gdd,
    verify_lottery,
    verify_turan_property,
)

from oracles import is_lottery

FANO = SetSystem(7, 3, ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)))


def random_system(rng, n, k):
    all_blocks = list(itertools.combinations(range(n), k))
    return SetSystem(n, k, tuple(rng.sample(all_blocks, rng.randint(0, min(len(all_blocks), 10)))))


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(True, (0,))
    with pytest.raises(ValueError):
        Verdict(False, None)


class TestLottery:
    def test_fano_covers_pairs(self):
        assert verify_lottery(FANO, Params(7, 3, 2, 2)).ok

    def test_empty_fails_at_first_set(self):
        v = verify_lottery(SetSystem(6, 3, ()), Params(6, 3, 2, 4))
        assert not v.ok and v.witness == (0, 1, 2, 3)

    def test_complete_passes(self):
        assert verify_lottery(SetSystem.complete(6, 3), Params(6, 3, 2, 4)).ok

    def test_vacuous(self):
        assert verify_lottery(SetSystem(3, 2, ()), Params.relaxed(3, 2, 1, 5)).ok

    def test_mismatch(self):
        with pytest.raises(ParameterError):
            verify_lottery(FANO, Params(8, 3, 2, 2))

    def test_witness_is_lex_least_and_reproduces(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(3, 8)
            k = rng.randint(1, n)
            r = rng.randint(1, k)
            p = rng.randint(r, n)
            s = random_system(rng, n, k)
            v = verify_lottery(s, Params(n, k, r, p))
            assert v.ok == is_lottery(s.blocks, n, r, p)
            if not v.ok:
                failing = [
                    P for P in itertools.combinations(range(n), p)
                    if not any(len(set(b) & set(P)) >= r for b in s.blocks)
                ]
                assert v.witness == failing[0]

    def test_parallel_matches_sequential(self):
        rng = random.Random(3)
        for _ in range(5):
            s = random_system(rng, 9, 3)
            params = Params(9, 3, 2, 4)
            assert verify_lottery(s, params, workers=2) == verify_lottery(s, params, workers=0)


class TestCovering:
    def test_missing_pair(self):
        v = verify_covering(SetSystem(4, 3, ((0, 1, 2), (0, 1, 3))), 2)
        assert not v.ok and v.witness == (2, 3)

    def test_greedy_is_valid(self):
        assert verify_covering(greedy_covering(8, 4, 3), 3).ok

    def test_r1_union(self):
        assert verify_covering(SetSystem(5, 2, ((0, 1), (2, 3), (3, 4))), 1).ok

    def test_agrees_with_lottery_at_p_equals_r(self):
        rng = random.Random(11)
        for _ in range(40):
            s = random_system(rng, 7, 3)
            for r in (1, 2, 3):
                assert verify_covering(s, r) == verify_lottery(s, Params(7, 3, r, r))


class TestTuranProperty:
    def test_complete(self):
        assert verify_turan_property(SetSystem.complete(6, 3), 4).ok

    def test_empty(self):
        assert not verify_turan_property(SetSystem(5, 2, ()), 3).ok

    def test_two_disjoint_edges(self):
        assert verify_turan_property(SetSystem(4, 2, ((0, 1), (2, 3))), 3).ok

    def test_probe_below_edge_size(self):
        with pytest.raises(ParameterError):
            verify_turan_property(SetSystem(4, 3, ()), 2)

    def test_equivalence_triangle(self):
        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(3, 8)
            k = rng.randint(2, min(n, 4))
            r = rng.randint(1, k)
            p = rng.randint(r, min(n, r + 2))
            H = random_system(rng, n, k)
            a = verify_lottery(H, Params(n, k, r, p)).ok
            b = verify_turan_property(shadow(H, r), p).ok
            c = is_family_free(complement_system(shadow(H, r)), ForbiddenFamily.clique(p, r))
            assert a == b == c


class TestGdd:
    def test_ok(self):
        assert verify_gdd(gdd(2, 3, 2), PartiteLayout(3, 2), 2).ok

    def test_deleted_block(self):
        g = gdd(2, 3, 2)
        v = verify_gdd(SetSystem(6, 3, g.blocks[1:]), PartiteLayout(3, 2), 2)
        assert not v.ok and "0 blocks" in v.detail

    def test_extra_transversal(self):
        # (0,0,0) is in the design; (0,0,1) violates the parity condition
        g = gdd(2, 3, 2)
        extra = SetSystem(6, 3, g.blocks + ((0, 2, 5),))
        v = verify_gdd(extra, PartiteLayout(3, 2), 2)
        assert not v.ok and "2 blocks" in v.detail

    def test_non_transversal(self):
        with pytest.raises(StructuralError):
            verify_gdd(SetSystem(6, 3, ((0, 1, 4),)), PartiteLayout(3, 2), 2)


class TestPatchCoverage:
    def test_r1_vacuous(self):
        assert check_patch_coverage(SetSystem(6, 2, ()), 3, 2, 1).ok

    def test_patches_cover_same_part_pairs(self):
        assert check_patch_coverage(patches(4, 4, 3, 2), 4, 4, 2).ok

    def test_empty_fails_on_clone_pair(self):
        v = check_patch_coverage(SetSystem(6, 3, ()), 2, 3, 2)
        assert not v.ok and v.witness == (0, 1)

    def test_size_mismatch(self):
        with pytest.raises(ParameterError):
            check_patch_coverage(SetSystem(7, 3, ()), 2, 3, 2)
