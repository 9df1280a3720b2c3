"""Windowed generation of multiple-free indicator sequences.

Windows are produced by a segmented residue sieve: allocate the window as
ones, then strike each forbidden residue class by strided assignment.
Work is O(sum window/b_k), so 10^8-size windows stay feasible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import BinaryWord, BSet, OdometerPoint
from .errors import WindowTooLarge

__all__ = [
    "MAX_WINDOW_BITS",
    "SAProfile",
    "eta_window",
    "phi_window",
    "phi_sa_window",
    "one_density",
]

# Default memory budget for a single window, overridable per call.
MAX_WINDOW_BITS = 2**30


def _window(lo: int, hi: int, max_bits) -> np.ndarray:
    if hi <= lo:
        raise ValueError(f"empty window [{lo}, {hi})")
    budget = MAX_WINDOW_BITS if max_bits is None else max_bits
    if hi - lo > budget:
        raise WindowTooLarge(f"window of {hi - lo} bits exceeds budget {budget}")
    return np.ones(hi - lo, dtype=np.uint8)


def _strike(bits: np.ndarray, lo: int, residue: int, modulus: int) -> None:
    # Zero every index n in [lo, lo+len) with n == residue (mod modulus).
    start = (residue - lo) % modulus
    bits[start::modulus] = 0


def eta_window(bset: BSet, lo: int, hi: int, *, max_bits=None) -> BinaryWord:
    """Indicator of integers in [lo, hi) divisible by no modulus."""
    bits = _window(lo, hi, max_bits)
    for b in bset.moduli:
        _strike(bits, lo, 0, b)
    return BinaryWord(bits, lo)


def phi_window(omega: OdometerPoint, lo: int, hi: int, *, max_bits=None) -> BinaryWord:
    """Coding of an odometer point over [lo, hi).

    Position n carries 1 iff omega(k) + n is nonzero mod b_k for every k.
    The all-zero point reproduces :func:`eta_window`.
    """
    bits = _window(lo, hi, max_bits)
    for r, b in zip(omega.residues, omega.bset.moduli):
        _strike(bits, lo, -r, b)
    return BinaryWord(bits, lo)


@dataclass(frozen=True)
class SAProfile:
    """Per-modulus missing-residue data (s_k, a^k) for generalized codings.

    ``a[k]`` is a set of s_k distinct residues mod b_k.  The profile's own
    odometer runs over Z/b'_k with b'_k the minimal translation period of
    a^k, since the coding only depends on omega(k) mod b'_k.
    """

    bset: BSet
    s: tuple[int, ...]
    a: tuple[frozenset[int], ...]

    def __post_init__(self):
        if not len(self.bset) == len(self.s) == len(self.a):
            raise ValueError("s and a must have one entry per modulus")
        reduced = []
        for sk, ak, b in zip(self.s, self.a, self.bset.moduli):
            if not 1 <= sk <= b - 1:
                raise ValueError(f"s must lie in [1, {b - 1}], got {sk}")
            rk = frozenset(x % b for x in ak)
            if len(rk) != sk:
                raise ValueError("a^k must contain exactly s_k distinct residues")
            reduced.append(rk)
        object.__setattr__(self, "a", tuple(reduced))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))

    @classmethod
    def plain(cls, bset: BSet) -> "SAProfile":
        """The degenerate profile s_k = 1, a^k = {0} (plain free numbers)."""
        n = len(bset)
        return cls(bset, (1,) * n, (frozenset([0]),) * n)

    @property
    def odometer_moduli(self) -> tuple[int, ...]:
        """Minimal translation period of each a^k (divides b_k)."""
        out = []
        for ak, b in zip(self.a, self.bset.moduli):
            for j in range(1, b + 1):
                if b % j == 0 and frozenset((x - j) % b for x in ak) == ak:
                    out.append(j)
                    break
        return tuple(out)

    def free_density(self) -> Fraction:
        return math.prod(
            (Fraction(b - sk, b) for sk, b in zip(self.s, self.bset.moduli)),
            start=Fraction(1),
        )


def phi_sa_window(
    profile: SAProfile,
    omega: OdometerPoint | Sequence[int],
    lo: int,
    hi: int,
    *,
    max_bits=None,
) -> BinaryWord:
    """Generalized coding: forbid n == a_i^k - omega(k) (mod b_k) for all k, i.

    ``omega`` may be an :class:`OdometerPoint` over the full moduli or a raw
    residue sequence; coordinates are used mod b'_k (any lift of omega(k)
    gives the same window because a^k is b'_k-translation invariant).
    Degenerates to :func:`phi_window` when every s_k = 1 and a^k = {0}.
    """
    residues = omega.residues if isinstance(omega, OdometerPoint) else tuple(omega)
    if len(residues) != len(profile.bset):
        raise ValueError("one odometer coordinate per modulus required")
    bits = _window(lo, hi, max_bits)
    for r, ak, b in zip(residues, profile.a, profile.bset.moduli):
        for ai in ak:
            _strike(bits, lo, ai - r, b)
    return BinaryWord(bits, lo)


def one_density(word: BinaryWord) -> Fraction:
    """Exact fraction of ones in a nonempty word."""
    return word.density()
