"""Subshift inclusion and equality from moduli arithmetic, with witnesses.

The arithmetic criterion: the free subshift of A is contained in that of B
iff every modulus of B is divisible by some modulus of A.  A word-level
oracle confirms the verdict by bounded search for a separating word.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import numpy as np

from .admissibility import is_admissible
from .core import BinaryWord, BSet
from .errors import DivisiblePrecondition, NotCoprimeToC, SearchBudgetExceeded

__all__ = [
    "includes",
    "equality",
    "construct_admissible",
    "inclusion_witness",
    "word_level_includes",
    "density_estimate",
]

# Combinatorial budget for the word-level oracle: product over A-moduli of
# b (reserved-residue combinations).
MAX_ORACLE_COMBOS = 10**6


def includes(bset_a: BSet, bset_b: BSet) -> bool:
    """True iff the free subshift of ``bset_a`` sits inside that of ``bset_b``.

    Holds exactly when every modulus of B is a multiple of some modulus of
    A: divisibility pushes every A-free pattern inside the B-free ones.
    """
    return all(any(bp % b == 0 for b in bset_a.moduli) for bp in bset_b.moduli)


def equality(bset_a: BSet, bset_b: BSet) -> bool:
    """True iff the two subshifts coincide, i.e. the moduli lists are equal.

    Coprimality within each set forces mutual inclusion to collapse to
    literal equality.
    """
    same = bset_a.moduli == bset_b.moduli
    assert same == (includes(bset_a, bset_b) and includes(bset_b, bset_a))
    return same


def construct_admissible(small_moduli, b_prime: int) -> set[int]:
    """Set of b' integers admissible for the small moduli, full mod b'.

    A = {i + e_i * b' : i = 1..b'} with e_i the product of the small moduli
    not dividing i (1 if all divide i).  Every small modulus misses residue
    0 on A, while A mod b' runs through all of Z/b'.
    """
    small = tuple(int(m) for m in small_moduli)
    for i in range(len(small)):
        for j in range(i + 1, len(small)):
            if math.gcd(small[i], small[j]) != 1:
                raise ValueError("small moduli must be pairwise coprime")
    b_prime = int(b_prime)
    if b_prime < 2:
        raise ValueError("b_prime must be >= 2")
    for m in small:
        if b_prime % m == 0:
            raise DivisiblePrecondition(f"{m} divides {b_prime}")
    out = set()
    for i in range(1, b_prime + 1):
        e = math.prod(m for m in small if i % m != 0)
        out.add(i + e * b_prime)
    return out


@lru_cache(maxsize=None)
def _separating_modulus(moduli_a: tuple[int, ...], b_prime: int) -> bool:
    """Can an A-admissible support cover all residues mod b_prime?

    Reserve one missing residue m_j per A-modulus; a support avoiding
    every m_j stays admissible however large it grows, so coverage is
    decided per residue class r mod b_prime: does some n == r (mod
    b_prime) avoid all the m_j?  The congruence n == m_j (mod a_j)
    restricted to the class r is an arithmetic progression in the class
    parameter t with modulus a_j/gcd(a_j, b_prime) (active only when
    gcd | m_j - r); progressions with pairwise coprime moduli >= 2 never
    cover, so the class is infeasible iff some active modulus is 1.
    """
    if math.prod(moduli_a) > MAX_ORACLE_COMBOS:
        raise SearchBudgetExceeded(
            f"reserved-residue combinations {math.prod(moduli_a)} exceed budget"
        )
    gs = [math.gcd(a, b_prime) for a in moduli_a]
    for reserved in product(*(range(a) for a in moduli_a)):
        ok = True
        for r in range(b_prime):
            for m, a, g in zip(reserved, moduli_a, gs):
                if (m - r) % g == 0 and a == g:
                    # every n == r (mod b') also has n == m (mod a)
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def word_level_includes(bset_a: BSet, bset_b: BSet) -> bool:
    """Oracle for :func:`includes` that never consults divisibility.

    True iff no finite A-admissible support covers a full residue system
    modulo any B-modulus.
    """
    return not any(_separating_modulus(bset_a.moduli, bp) for bp in bset_b.moduli)


def inclusion_witness(bset_a: BSet, bset_b: BSet) -> BinaryWord | None:
    """A word admissible for A but not for B, or None when A is included.

    The witness support is the explicit b'-covering construction of
    :func:`construct_admissible` at the first B-modulus no A-modulus
    divides; its length stays under 4 times the product of all moduli.
    When the arithmetic verdict is inclusion, the bounded oracle confirms
    no witness exists before returning None.
    """
    bound = 4 * math.prod(bset_a.moduli) * math.prod(bset_b.moduli)
    if includes(bset_a, bset_b):
        if not word_level_includes(bset_a, bset_b):
            raise AssertionError("oracle contradicts the divisibility criterion")
        return None
    b_prime = next(
        bp for bp in bset_b.moduli if all(bp % b != 0 for b in bset_a.moduli)
    )
    support = construct_admissible(bset_a.moduli, b_prime)
    hi = max(support) + 1
    if hi > bound:
        raise SearchBudgetExceeded(f"witness length {hi} exceeds bound {bound}")
    word = BinaryWord.from_support(support, 0, hi)
    assert is_admissible(word, bset_a)
    assert not is_admissible(word, BSet((b_prime,)))
    return word


def density_estimate(bset: BSet, c: int, r: int, horizon: int) -> float:
    """Empirical density of s in [1, horizon] with s*c + r free of all moduli.

    Converges to prod(1 - 1/b_k) when gcd(c, b_k) = 1 for all k; exact at
    horizons that are multiples of the joint period up to O(1/horizon)
    edge effects.
    """
    for b in bset.moduli:
        if math.gcd(c, b) != 1:
            raise NotCoprimeToC(f"gcd({c}, {b}) != 1")
    if horizon < bset.period:
        raise ValueError("horizon must be at least the joint period")
    n = np.arange(1, horizon + 1, dtype=np.int64) * c + r
    free = np.ones(horizon, dtype=bool)
    for b in bset.moduli:
        free &= n % b != 0
    return float(free.mean())
