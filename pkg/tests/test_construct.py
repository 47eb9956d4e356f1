import itertools
from fractions import Fraction
from math import comb

import pytest

from lotteryforge import (
    ParameterError,
    Params,
    PartiteLayout,
    PreconditionError,
    SetSystem,
    check_patch_coverage,
    compose,
    gdd,
    greedy_covering,
    patches,
    verify_covering,
    verify_gdd,
    verify_lottery,
)
from lotteryforge.construct import required_modulus

from oracles import gdd_hit_counts


def z_coords(block, N):
    return tuple(v % N for v in block)


class TestGdd:
    def test_parity_design(self):
        g = gdd(2, 3, 2)
        assert sorted(z_coords(b, 2) for b in g.blocks) == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]

    def test_r_equals_k_is_all_transversals(self):
        g = gdd(3, 3, 3)
        assert len(g) == 27
        assert set(g.blocks) == set(itertools.product(range(3), range(3, 6), range(6, 9)))

    def test_blocks_satisfy_power_equations(self):
        N, k, r = 7, 4, 2
        for b in gdd(N, k, r).blocks:
            z = z_coords(b, N)
            for i in range(k - r):
                assert sum(pow(j, i) * z[j] for j in range(k)) % N == 0

    @pytest.mark.parametrize("k, r, N", [(3, 2, 2), (3, 2, 4), (4, 2, 7), (4, 3, 2), (3, 1, 3), (5, 3, 13)])
    def test_exactly_one_by_oracle(self, k, r, N):
        g = gdd(N, k, r)
        assert len(g) == N ** r
        assert all([v // N for v in b] == list(range(k)) for b in g.blocks)
        assert set(gdd_hit_counts(g.blocks, k, N, r).values()) == {1}
        assert verify_gdd(g, PartiteLayout(k, N), r).ok

    def test_congruence_rejected_with_modulus(self):
        with pytest.raises(PreconditionError) as err:
            gdd(6, 4, 2)
        assert err.value.required_modulus == 6
        assert "N ≡ 1 mod 6" in str(err.value)

    def test_bad_arguments(self):
        with pytest.raises(ParameterError):
            gdd(5, 1, 1)
        with pytest.raises(ParameterError):
            gdd(5, 3, 4)

    def test_required_modulus(self):
        assert required_modulus(4, 2) == 6
        assert required_modulus(5, 3) == 12
        assert required_modulus(3, 3) == 1


class TestGreedyCovering:
    @pytest.mark.parametrize("n, k", [(5, 2), (7, 3), (10, 4), (6, 6)])
    def test_r1_tiles(self, n, k):
        assert len(greedy_covering(n, k, 1)) == -(-n // k)

    def test_small_pairs(self):
        c = greedy_covering(4, 3, 2)
        assert c.blocks == ((0, 1, 2), (0, 1, 3), (0, 2, 3))
        assert verify_covering(c, 2).ok

    def test_seven_points(self):
        c = greedy_covering(7, 3, 2)
        assert verify_covering(c, 2).ok
        assert len(c) >= 7

    def test_always_valid(self):
        for n in range(2, 9):
            for k in range(1, n + 1):
                for r in range(1, k + 1):
                    assert verify_covering(greedy_covering(n, k, r), r).ok


class TestPatches:
    def test_r1_empty(self):
        assert len(patches(3, 4, 3, 1)) == 0

    def test_r2_is_covering_per_part(self):
        B = patches(4, 4, 3, 2)
        assert len(B) == 12
        assert all(len({v // 4 for v in b}) == 1 for b in B.blocks)

    def test_r3_allows_one_outside_vertex(self):
        m, N, k, r = 2, 5, 3, 3
        B = patches(m, N, k, r)
        for b in B.blocks:
            parts = [v // N for v in b]
            assert max(parts.count(v) for v in set(parts)) >= 2
            assert len(set(parts)) <= 2
        # with two base vertices every triple repeats a part
        assert len(B) == 120
        assert check_patch_coverage(B, m, N, r).ok

    @pytest.mark.parametrize("k, r, m, N", [(3, 2, 3, 3), (3, 3, 3, 3), (4, 3, 3, 4), (4, 4, 2, 4), (4, 2, 3, 4)])
    def test_coverage_claim(self, k, r, m, N):
        assert check_patch_coverage(patches(m, N, k, r), m, N, r).ok

    def test_part_too_small(self):
        with pytest.raises(PreconditionError):
            patches(3, 2, 3, 2)


class TestCompose:
    H = SetSystem(4, 3, ((0, 1, 2),))
    P = Params(4, 3, 2, 3)

    def test_small_run(self):
        HN, rep = compose(self.H, self.P, 4)
        assert HN.n == 16
        assert (rep.size_A, rep.size_B, rep.overlap, rep.total) == (16, 12, 0, 28)
        assert len(HN) == 28
        assert verify_lottery(HN, Params(16, 3, 2, 3)).ok

    def test_size_identity_and_bookkeeping(self):
        H = SetSystem(5, 3, ((0, 1, 2), (0, 3, 4), (1, 2, 3)))
        params = Params(5, 3, 2, 3)
        assert verify_lottery(H, params).ok
        for N in (4, 5):
            HN, rep = compose(H, params, N)
            assert rep.size_A == N ** 2 * len(H)
            assert rep.total == len(HN) == rep.size_A + rep.size_B - rep.overlap
            assert len(HN) <= N ** 2 * len(H) + rep.size_B
            assert rep.density == Fraction(rep.total, comb(5 * N, 2))

    def test_b_independent_of_h(self):
        _, small = compose(self.H, self.P, 5)
        H2 = SetSystem(4, 3, ((0, 1, 2), (0, 1, 3)))
        _, big = compose(H2, self.P, 5)
        assert small.size_B == big.size_B

    def test_r_equals_k(self):
        HN, rep = compose(SetSystem(3, 3, ((0, 1, 2),)), Params(3, 3, 3, 3), 5)
        assert rep.size_A == 125
        assert verify_lottery(HN, Params(15, 3, 3, 3)).ok

    def test_k4_r3(self):
        H = SetSystem(5, 4, ((0, 1, 2, 3), (0, 1, 2, 4), (1, 2, 3, 4)))
        params = Params(5, 4, 3, 4)
        assert verify_lottery(H, params).ok
        HN, rep = compose(H, params, 4)
        assert rep.size_A == 4 ** 3 * len(H)
        assert verify_lottery(HN, Params(20, 4, 3, 4)).ok

    def test_rejects_non_lottery_input(self):
        with pytest.raises(PreconditionError):
            compose(SetSystem(4, 3, ()), self.P, 4)

    def test_rejects_bad_modulus_and_small_parts(self):
        H = SetSystem(4, 3, ((0, 1, 2),))
        with pytest.raises(PreconditionError):
            compose(H, Params(4, 3, 1, 2), 2)
        with pytest.raises(PreconditionError) as err:
            compose(SetSystem(5, 4, ((0, 1, 2, 3),)), Params(5, 4, 2, 2), 6)
        assert err.value.required_modulus == 6
