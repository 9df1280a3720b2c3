import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfree.admissibility import is_admissible
from bfree.core import BSet, validate_bset
from bfree.errors import DivisiblePrecondition, NotCoprimeToC
from bfree.inclusion import (
    construct_admissible,
    density_estimate,
    equality,
    includes,
    inclusion_witness,
    word_level_includes,
)

_POOL = [2, 3, 5, 7, 11, 4, 9, 25, 8, 27]


def random_bset(rng):
    primes = rng.sample([2, 3, 5, 7, 11, 13], rng.randint(1, 3))
    return validate_bset(sorted(p ** rng.randint(1, 2) for p in primes))


class TestIncludes:
    def test_divisor(self):
        assert includes(validate_bset([2]), validate_bset([4]))

    def test_no_divisor(self):
        assert not includes(validate_bset([2, 3]), validate_bset([5]))

    def test_mixed(self):
        assert includes(validate_bset([2, 9]), validate_bset([4, 9]))

    def test_preorder(self):
        rng = random.Random(0)
        sets = [random_bset(rng) for _ in range(40)]
        for s in sets:
            assert includes(s, s)
        for a in sets[:12]:
            for b in sets[:12]:
                for c in sets[:12]:
                    if includes(a, b) and includes(b, c):
                        assert includes(a, c)


class TestEquality:
    def test_identical(self):
        assert equality(validate_bset([2, 3]), validate_bset([2, 3]))

    def test_different(self):
        assert not equality(validate_bset([2]), validate_bset([4]))

    def test_order_insensitive(self):
        assert equality(validate_bset([4, 9]), validate_bset(sorted([9, 4])))


class TestConstructAdmissible:
    def test_23_5(self):
        assert construct_admissible([2, 3], 5) == {31, 17, 13, 19, 35}

    def test_2_3(self):
        assert construct_admissible([2], 3) == {7, 5, 9}

    def test_empty_small(self):
        assert construct_admissible([], 2) == {3, 4}

    def test_divisible_precondition(self):
        with pytest.raises(DivisiblePrecondition):
            construct_admissible([2, 3], 6)

    def test_randomized_verification(self):
        rng = random.Random(7)
        done = 0
        while done < 60:
            small = rng.sample([2, 3, 5, 7], rng.randint(0, 3))
            b_prime = rng.randint(2, 40)
            if any(b_prime % m == 0 for m in small):
                continue
            out = construct_admissible(small, b_prime)
            assert len(out) == b_prime
            for m in small:
                assert all(x % m != 0 for x in out)
            assert {x % b_prime for x in out} == set(range(b_prime))
            done += 1


class TestInclusionWitness:
    def test_witness_via_construction(self):
        w = inclusion_witness(validate_bset([2, 3]), validate_bset([5]))
        assert sorted(int(n) for n in w.support) == [13, 17, 19, 31, 35]
        assert is_admissible(w, validate_bset([2, 3]))
        assert not is_admissible(w, validate_bset([5]))

    def test_no_witness_when_included(self):
        assert inclusion_witness(validate_bset([2]), validate_bset([4])) is None
        assert inclusion_witness(validate_bset([2]), validate_bset([2])) is None

    def test_witness_matches_verdict(self):
        rng = random.Random(3)
        for _ in range(30):
            a, b = random_bset(rng), random_bset(rng)
            w = inclusion_witness(a, b)
            assert (w is None) == includes(a, b)
            if w is not None:
                assert is_admissible(w, a) and not is_admissible(w, b)


class TestWordLevelOracle:
    def test_agrees_on_small_pairs(self):
        singles = [validate_bset([b]) for b in range(2, 16)]
        for a in singles:
            for b in singles:
                assert word_level_includes(a, b) == includes(a, b)

    def test_agrees_on_random_pairs(self):
        rng = random.Random(11)
        for _ in range(60):
            a, b = random_bset(rng), random_bset(rng)
            assert word_level_includes(a, b) == includes(a, b)

    def test_direct_maximal_support_check(self):
        # independent oracle: place ones at every position avoiding one
        # reserved residue per A-modulus and see if a B-modulus is covered
        for a_mods, b_prime in [((2,), 4), ((2,), 3), ((2, 3), 5), ((3,), 9), ((4,), 6)]:
            period = math.lcm(*(a_mods + (b_prime,)))
            brute = False
            for reserved in _all_combos(a_mods):
                allowed = [
                    n
                    for n in range(period)
                    if all(n % a != m for a, m in zip(a_mods, reserved))
                ]
                if {n % b_prime for n in allowed} == set(range(b_prime)):
                    brute = True
                    break
            oracle = not word_level_includes(
                validate_bset(list(a_mods)), validate_bset([b_prime])
            )
            assert oracle == brute


def _all_combos(mods):
    import itertools

    return itertools.product(*(range(m) for m in mods))


class TestDensityEstimate:
    def test_23(self):
        est = density_estimate(validate_bset([2, 3]), 5, 0, 60000)
        assert abs(est - 1 / 3) < 2 * 6 / 60000 + 1e-12

    def test_single(self):
        est = density_estimate(validate_bset([2]), 3, 1, 100000)
        assert abs(est - 1 / 2) < 1e-4

    def test_exact_small_horizon(self):
        assert density_estimate(validate_bset([2, 3]), 1, 0, 6) == 2 / 6

    def test_not_coprime(self):
        with pytest.raises(NotCoprimeToC):
            density_estimate(validate_bset([2, 3]), 4, 0, 100)
