import json
import math
from fractions import Fraction

import numpy as np
import pytest

from bfree.admissibility import admissible_words
from bfree.core import BinaryWord, validate_bset
from bfree.errors import (
    NotMinimalPeriod,
    NotSaturated,
    PrecisionExhausted,
    PreconditionUnmet,
    TargetTooLong,
)
from bfree.sturmian import (
    PeriodicHereditarySystem,
    RotationCoding,
    close_alpha_block_containment,
    collect_blocks,
    hereditary_closure_count,
    hereditary_entropy_estimate,
    minimal_subset_variant,
    mme_block_frequency,
    rotation_complexity,
    sample_periodic_windows,
    sturmian_window,
    transitive_closure_point,
    two_mme_system,
)

GOLDEN = RotationCoding.golden()

# deterministic output of the transitive construction over the parity-free
# catalogue, n1 = 1, h = 1/2; frozen after property verification below
TRANSITIVE_FIXTURE = (
    "000100000000000000000000000000000000000001000000000000000010"
    "000000000000000100000000000000000101000000000000001000000000"
)


class TestRotationCoding:
    def test_golden_prefix(self):
        assert sturmian_window(GOLDEN, 0, 6).to_string() == "101011"

    def test_full_interval_all_ones(self):
        coding = RotationCoding.golden(interval=(Fraction(0), Fraction(1)))
        assert sturmian_window(coding, 0, 20).ones == 20

    def test_golden_continued_fraction(self):
        assert GOLDEN.continued_fraction_prefix(12) == [1] * 12

    def test_json_fields(self):
        obj = json.loads(GOLDEN.to_json())
        assert set(obj) == {"alpha_cf", "alpha_fixed", "y", "interval"}
        assert obj["interval"] == ["0", "1/2"]

    def test_precision_exhausted_near_endpoint(self):
        # alpha a hair under 1/2 with offset phase: at n=2 the phase lands
        # one unit below 0, inside the forward error of the truncation
        coding = RotationCoding((1 << 127) - 1, 1)
        with pytest.raises(PrecisionExhausted):
            sturmian_window(coding, 0, 3)

    def test_density_close_to_interval_length(self):
        for N in (100, 1000, 5000):
            w = sturmian_window(GOLDEN, 0, N)
            assert abs(w.ones / N - 0.5) <= 3 / N

    def test_negative_window(self):
        w = sturmian_window(GOLDEN, -5, 5)
        assert len(w) == 10 and w.offset == -5


class TestRotationComplexity:
    def test_two_symbols(self):
        assert rotation_complexity(GOLDEN, 1)[0] == 2

    def test_linear_bound(self):
        counts = rotation_complexity(GOLDEN, 12)
        for n, p in enumerate(counts, start=1):
            assert p <= 2 * n + 2

    def test_stable_under_doubling(self):
        a = collect_blocks(GOLDEN, 2)
        b = collect_blocks(GOLDEN, 2, start_length=4096)
        assert a == b and len(a) <= 6

    def test_not_saturated(self):
        with pytest.raises(NotSaturated):
            collect_blocks(GOLDEN, 10, max_length=256)


class TestHereditaryClosure:
    def test_count_small(self):
        # closure of blocks {10, 01} adds 00, not 11
        assert hereditary_closure_count(["10", "01"]) == 3

    def test_estimate_is_density(self):
        assert hereditary_entropy_estimate(GOLDEN, 20) == 0.5

    def test_estimate_lower_bounds_closure_count(self):
        n = 10
        blocks = collect_blocks(GOLDEN, n)
        full = math.log2(hereditary_closure_count(blocks)) / n
        assert hereditary_entropy_estimate(GOLDEN, n) <= full


class TestPeriodicHereditarySystem:
    def test_minimal_period_enforced(self):
        with pytest.raises(NotMinimalPeriod):
            PeriodicHereditarySystem(BinaryWord.from_string("101101"))

    def test_window_wraps(self):
        system = PeriodicHereditarySystem(BinaryWord.from_string("101"))
        assert system.window(-2, 4).to_string() == "011011"


class TestTwoMME:
    def test_blocks(self):
        a, b = two_mme_system()
        assert a.block.to_string() == "101001000"
        assert b.block.to_string() == "101000100"

    def test_entropies(self):
        from bfree.entropy import htop_periodic_hereditary

        a, b = two_mme_system()
        assert htop_periodic_hereditary(a.block).exact == Fraction(1, 3)
        assert htop_periodic_hereditary(b.block).exact == Fraction(1, 3)

    def test_target_frequency_a(self):
        a, _ = two_mme_system()
        assert mme_block_frequency(a, a.block, Fraction(1, 2)) == Fraction(1, 72)

    def test_target_frequency_b_vanishes(self):
        a, b = two_mme_system()
        assert mme_block_frequency(b, a.block, Fraction(1, 2)) == 0

    def test_all_zero_target(self):
        a, _ = two_mme_system()
        zero = BinaryWord.from_string("0" * 9)
        assert mme_block_frequency(a, zero, Fraction(1, 2)) == Fraction(1, 8)

    def test_separation_for_every_p(self):
        a, b = two_mme_system()
        for p in (Fraction(1, 10), Fraction(1, 3), Fraction(9, 10)):
            assert mme_block_frequency(a, a.block, p) > 0
            assert mme_block_frequency(b, a.block, p) == 0

    def test_distribution_sums_to_one(self):
        a, _ = two_mme_system()
        total = Fraction(0)
        for mask in range(1 << 9):
            target = BinaryWord([mask >> i & 1 for i in range(9)])
            total += mme_block_frequency(a, target, Fraction(1, 2))
        assert total == 1

    def test_target_too_long(self):
        a, _ = two_mme_system()
        with pytest.raises(TargetTooLong):
            mme_block_frequency(a, BinaryWord.from_string("0" * 19), Fraction(1, 2))

    def test_sampler_matches_exact_law(self):
        a, _ = two_mme_system()
        windows = sample_periodic_windows(a, 0.5, 9, 200000, seed=5)
        target = a.block.bits
        freq = float((windows == target).all(axis=1).mean())
        assert abs(freq - 1 / 72) < 0.002


class TestTransitiveClosurePoint:
    @staticmethod
    def _blocks_of(n):
        return admissible_words(validate_bset([2]), n)

    def test_regression_fixture(self):
        w = transitive_closure_point(self._blocks_of, 0.5, 1, 120)
        assert w.to_string() == TRANSITIVE_FIXTURE

    def test_empty(self):
        assert len(transitive_closure_point(self._blocks_of, 0.5, 1, 0)) == 0

    def test_prefix_stability(self):
        long = transitive_closure_point(self._blocks_of, 0.5, 1, 2000).to_string()
        assert long.startswith(TRANSITIVE_FIXTURE)

    def test_catalogue_blocks_occur(self):
        long = transitive_closure_point(self._blocks_of, 0.5, 1, 3000).to_string()
        for n in (1, 2, 3, 4):
            assert all(b in long for b in self._blocks_of(n))

    def test_hereditary_consistency(self):
        # any word under an occurring factor occurs somewhere too
        long = transitive_closure_point(self._blocks_of, 0.5, 1, 3000).to_string()
        for n in (2, 3):
            factors = {long[i : i + n] for i in range(len(long) - n + 1)}
            for f in factors:
                ones = [i for i, c in enumerate(f) if c == "1"]
                for mask in range(1 << len(ones)):
                    w = list(f)
                    for j, pos in enumerate(ones):
                        if not mask >> j & 1:
                            w[pos] = "0"
                    assert "".join(w) in factors


class TestMinimalSubsetVariant:
    def test_zeroes_even_blocks(self):
        a, _ = two_mme_system()
        w = minimal_subset_variant(a, [2], 0, 45)
        chunks = [w.to_string()[i : i + 9] for i in range(0, 45, 9)]
        assert chunks[0] == chunks[1] == chunks[3] == "101001000"
        assert chunks[2] == chunks[4] == "0" * 9

    def test_empty_primes_unmodified(self):
        a, _ = two_mme_system()
        assert minimal_subset_variant(a, [], 0, 27) == a.window(0, 27)

    def test_unbounded_zero_runs(self):
        system = PeriodicHereditarySystem(BinaryWord.from_string("1"))
        w = minimal_subset_variant(system, [2, 3, 5, 7], 0, 4000).to_string()
        # runs of zeros get longer and longer while ones keep returning
        longest = max(len(r) for r in w.split("1") if r)
        assert longest >= 5
        assert w.count("1") > 1000

    def test_primes_sorted(self):
        a, _ = two_mme_system()
        with pytest.raises(ValueError):
            minimal_subset_variant(a, [3, 2], 0, 9)


class TestCloseAlphaContainment:
    def test_small_perturbation(self):
        beta = RotationCoding(GOLDEN.alpha_fixed + (1 << 108))
        assert close_alpha_block_containment(GOLDEN, beta, 4)

    def test_equal(self):
        assert close_alpha_block_containment(GOLDEN, GOLDEN, 6)

    def test_gap_too_large(self):
        beta = RotationCoding.from_real(Fraction(9, 10))
        with pytest.raises(PreconditionUnmet):
            close_alpha_block_containment(GOLDEN, beta, 10)

    def test_bad_quotients(self):
        # alpha = 1/4 has a partial quotient of 4
        with pytest.raises(PreconditionUnmet):
            close_alpha_block_containment(
                RotationCoding.from_real(Fraction(1, 4)),
                RotationCoding.from_real(Fraction(1, 4)),
                2,
            )
