"""Rotation codings, periodic hereditary systems, and counterexample builds.

Rotation phases are tracked in 128-bit fixed point; a bit is only emitted
when the accumulated truncation error cannot flip it, otherwise
PrecisionExhausted is raised.  Hereditary-closure block counts use the
dominated-enumeration identity (count words lying under some occurring
block) and never materialize the closure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

import numpy as np

from .core import BinaryWord
from .errors import (
    BudgetExceeded,
    NotMinimalPeriod,
    NotSaturated,
    PrecisionExhausted,
    PreconditionUnmet,
    TargetTooLong,
    WindowTooLarge,
)
from .sieve import MAX_WINDOW_BITS

__all__ = [
    "RotationCoding",
    "PeriodicHereditarySystem",
    "sturmian_window",
    "collect_blocks",
    "rotation_complexity",
    "hereditary_closure_count",
    "hereditary_entropy_estimate",
    "two_mme_system",
    "mme_block_frequency",
    "sample_periodic_windows",
    "transitive_closure_point",
    "minimal_subset_variant",
    "close_alpha_block_containment",
]

_BITS = 128
_MOD = 1 << _BITS


def _to_fixed(x) -> int:
    """Truncate a real in [0, 1] to 128 fractional bits."""
    f = Fraction(x)
    if not 0 <= f <= 1:
        raise ValueError("value must lie in [0, 1]")
    return (f.numerator << _BITS) // f.denominator


def _continued_fraction(value: Fraction, max_terms: int = 64) -> list[int]:
    """Partial quotients of value in (0,1): value = 1/(a1 + 1/(a2 + ...))."""
    terms = []
    num, den = value.numerator, value.denominator
    while num and len(terms) < max_terms:
        a, r = divmod(den, num)
        terms.append(a)
        num, den = r, num
    return terms


@dataclass(frozen=True)
class RotationCoding:
    """Coding of the rotation n -> {y + n*alpha} by the interval [a, b).

    alpha and y are stored as 128-bit fixed-point fractions of [0, 1);
    the interval endpoints stay exact rationals.
    """

    alpha_fixed: int
    y_fixed: int = 0
    interval: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1, 2))

    def __post_init__(self):
        if not 0 < self.alpha_fixed < _MOD:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0 <= self.y_fixed < _MOD:
            raise ValueError("y must lie in [0, 1)")
        a, b = (Fraction(x) for x in self.interval)
        if not 0 <= a < b <= 1:
            raise ValueError("interval must satisfy 0 <= a < b <= 1")
        object.__setattr__(self, "interval", (a, b))

    @classmethod
    def golden(cls, y=0, interval=(Fraction(0), Fraction(1, 2))) -> "RotationCoding":
        """alpha = (sqrt(5) - 1)/2, truncated to 128 bits."""
        alpha = (math.isqrt(5 << (2 * _BITS)) - _MOD) // 2
        return cls(alpha, _to_fixed(y), interval)

    @classmethod
    def from_real(cls, alpha, y=0, interval=(Fraction(0), Fraction(1, 2))) -> "RotationCoding":
        return cls(_to_fixed(alpha), _to_fixed(y), interval)

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.alpha_fixed, _MOD)

    def continued_fraction_prefix(self, max_terms: int = 40) -> list[int]:
        return _continued_fraction(self.alpha, max_terms)

    def to_json(self) -> str:
        a, b = self.interval
        return json.dumps(
            {
                "alpha_cf": self.continued_fraction_prefix(),
                "alpha_fixed": format(self.alpha_fixed, "x"),
                "y": format(self.y_fixed, "x"),
                "interval": [str(a), str(b)],
            }
        )


def sturmian_window(coding: RotationCoding, lo: int, hi: int) -> BinaryWord:
    """Exact coding bits over [lo, hi).

    alpha is truncated, so the true phase at step n lies within |n| units
    of the computed one (one unit = 2^-128).  A bit is emitted only when
    no interval endpoint falls strictly inside that uncertainty range.
    """
    if hi <= lo:
        raise ValueError("empty window")
    a, b = coding.interval
    # endpoint positions as exact fractions of the circle, cross-multiplied
    ends = [(f.numerator * _MOD, f.denominator) for f in (a, b)]
    bits = np.empty(hi - lo, dtype=np.uint8)
    for i, n in enumerate(range(lo, hi)):
        phase = (coding.y_fixed + n * coding.alpha_fixed) % _MOD
        err = abs(n)
        for num, den in ends:
            # cyclic distance from phase to the endpoint, in units/den
            delta = (phase * den - num) % (_MOD * den)
            if 0 < min(delta, _MOD * den - delta) < err * den:
                raise PrecisionExhausted(
                    f"phase at n={n} within {err} units of an interval endpoint"
                )
        inside = (
            phase * a.denominator >= a.numerator * _MOD
            and phase * b.denominator < b.numerator * _MOD
        )
        bits[i] = 1 if inside else 0
    return BinaryWord(bits, lo)


def collect_blocks(
    coding: RotationCoding, n: int, *, start_length: int = 0, max_length: int = 1 << 21
) -> set[str]:
    """Distinct n-blocks along the forward orbit, with saturation control.

    Doubles the scanned orbit length until the block set is stable across
    two consecutive doublings; raises NotSaturated when the budget runs
    out first.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    length = max(start_length, 64 * n)
    text = sturmian_window(coding, 0, length).to_string()
    blocks = {text[i : i + n] for i in range(length - n + 1)}
    stable = 0
    while stable < 2:
        if 2 * length > max_length:
            raise NotSaturated(f"block count still growing at orbit length {length}")
        text += sturmian_window(coding, length, 2 * length).to_string()
        length *= 2
        before = len(blocks)
        blocks.update(text[i : i + n] for i in range(length - n + 1))
        stable = stable + 1 if len(blocks) == before else 0
    return blocks


def rotation_complexity(coding: RotationCoding, n_max: int, *, max_length: int = 1 << 21) -> list[int]:
    """Saturated counts of distinct n-blocks for n = 1..n_max.

    For the half interval [0, 1/2) the counts are additionally checked
    against the p_n <= 2n + 2 linear bound.
    """
    counts = []
    length = 0
    for n in range(1, n_max + 1):
        blocks = collect_blocks(coding, n, start_length=length, max_length=max_length)
        counts.append(len(blocks))
    if coding.interval == (Fraction(0), Fraction(1, 2)):
        for n, p in enumerate(counts, start=1):
            if p > 2 * n + 2:
                raise AssertionError(f"p_{n} = {p} exceeds 2n + 2")
    return counts


def _dominated_masks(block: str) -> Iterable[int]:
    positions = [i for i, c in enumerate(block) if c == "1"]
    masks = [0]
    for p in positions:
        masks += [m | (1 << p) for m in masks]
    return masks


def hereditary_closure_count(blocks: Iterable[str]) -> int:
    """Number of words dominated by at least one of the given blocks."""
    seen: set[int] = set()
    for block in blocks:
        seen.update(_dominated_masks(block))
    return len(seen)


def hereditary_entropy_estimate(coding: RotationCoding, n: int) -> float:
    """Certified lower-bound entropy estimate for the hereditary closure.

    Counts the words dominated by the coding's window [0, n): there are
    2^#ones of them, all closure blocks, so (1/n) log2 gives #ones/n bits.
    This converges at the speed of the one-density; the full closure count
    (:func:`hereditary_closure_count`) has a polynomial prefactor that
    distorts (1/n) log2 p_n for small n.
    """
    return sturmian_window(coding, 0, n).ones / n


@dataclass(frozen=True)
class PeriodicHereditarySystem:
    """Hereditary closure of the periodic point repeating ``block``.

    The block must be its own minimal period.
    """

    block: BinaryWord

    def __post_init__(self):
        n = len(self.block)
        if n == 0:
            raise NotMinimalPeriod("empty block")
        text = self.block.to_string()
        for d in range(1, n):
            if n % d == 0 and text == text[:d] * (n // d):
                raise NotMinimalPeriod(f"block repeats with period {d} < {n}")

    def window(self, lo: int, hi: int) -> BinaryWord:
        """The periodic concatenation restricted to [lo, hi)."""
        if hi <= lo:
            raise ValueError("empty window")
        if hi - lo > MAX_WINDOW_BITS:
            raise WindowTooLarge(f"window of {hi - lo} bits exceeds budget")
        c = len(self.block)
        idx = (np.arange(lo, hi) - self.block.offset) % c
        return BinaryWord(self.block.bits[idx], lo)


def two_mme_system() -> tuple[PeriodicHereditarySystem, PeriodicHereditarySystem]:
    """Two period-9 hereditary systems with equal entropy 1/3 bits.

    Their gap structures (2,3,4) vs (2,4,3) are not cyclic translates, so
    block-frequency statistics under the masked uniform-phase measure
    separate them.
    """
    return (
        PeriodicHereditarySystem(BinaryWord.from_string("101001000")),
        PeriodicHereditarySystem(BinaryWord.from_string("101000100")),
    )


def mme_block_frequency(
    system: PeriodicHereditarySystem, target: BinaryWord, p
) -> Fraction:
    """Exact probability that the window [0, |target|) shows ``target``.

    The measure is uniform phase times an independent Bernoulli(p) keep
    mask on the ones.  Phases whose window fails to dominate the target
    contribute zero.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    c = len(system.block)
    L = len(target)
    if L > 2 * c:
        raise TargetTooLong(f"target length {L} exceeds 2 * {c}")
    t_bits = target.bits
    total = Fraction(0)
    for j in range(c):
        window = system.window(j, j + L).bits
        if np.any(t_bits > window):
            continue
        kept = int(t_bits.sum())
        dropped = int(window.sum()) - kept
        total += p**kept * (1 - p) ** dropped
    return total / c


def sample_periodic_windows(
    system: PeriodicHereditarySystem, p, length: int, count: int, seed: int
) -> np.ndarray:
    """count x length uint8 array of masked windows at uniform phases.

    Vectorized draw from a single Philox stream keyed by the seed; row i
    is the window [j_i, j_i + length) with each 1 kept w.p. p.
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed) << 64))
    c = len(system.block)
    # read from an extended period so every phase window is contiguous
    extended = system.window(0, c + length).bits
    phases = rng.integers(0, c, size=count)
    windows = extended[phases[:, None] + np.arange(length)[None, :]]
    keep = (rng.random(size=(count, length)) < float(p)).astype(np.uint8)
    return windows & keep


def transitive_closure_point(
    blocks_of: Callable[[int], Iterable[str]],
    h_bits: float,
    n1: int,
    length: int,
    *,
    max_stages: int = 64,
) -> BinaryWord:
    """Prefix of a transitive point of a hereditary shift with entropy > 0.

    Inductive concatenation: with L = ceil(1/h_bits), stage 1 lays out the
    length-n1 block catalogue separated by zero runs of length L*n1; each
    later stage takes n_k = current prefix length and appends, between
    zero runs of length L*n_k, the full length-n_k catalogue followed by
    every word dominated by the current prefix, both in lexicographic
    order.  ``blocks_of(n)`` must yield lexicographically and lazily; it
    is consumed only until ``length`` is reached.  Deterministic given
    the catalogue order; truncated to ``length``.
    """
    if length == 0:
        return BinaryWord(np.zeros(0, dtype=np.uint8))
    if h_bits <= 0:
        raise ValueError("h_bits must be positive")
    L = math.ceil(1 / h_bits)
    pieces: list[str] = []
    total = 0

    def push(s: str) -> bool:
        nonlocal total
        pieces.append(s)
        total += len(s)
        return total >= length

    z1 = "0" * (L * n1)
    for block in blocks_of(n1):
        if push(block) or push(z1):
            return BinaryWord.from_string("".join(pieces)[:length])
    for _ in range(max_stages):
        prefix = "".join(pieces)
        nk = len(prefix)
        z = "0" * (L * nk)
        if push(z):
            break
        done = False
        for block in blocks_of(nk):
            if push(block) or push(z):
                done = True
                break
        if done:
            break
        # dominated words of the prefix, lexicographically: free choice at
        # each support position, leftmost bit most significant
        ones = [i for i, ch in enumerate(prefix) if ch == "1"]
        arr = np.zeros(nk, dtype=np.uint8)
        for choice in product("01", repeat=len(ones)):
            for pos, bit in zip(ones, choice):
                arr[pos] = bit == "1"
            if push((arr + ord("0")).tobytes().decode("ascii")) or push(z):
                done = True
                break
        if done:
            break
    else:
        raise BudgetExceeded(f"{max_stages} stages did not reach length {length}")
    return BinaryWord.from_string("".join(pieces)[:length])


def minimal_subset_variant(
    system: PeriodicHereditarySystem, primes: list[int], lo: int, hi: int
) -> BinaryWord:
    """Periodic concatenation with a sparse set of whole blocks zeroed.

    Block index n is zeroed when n == k - 1 (mod p_1 * ... * p_k) for some
    k and n != k - 1.  The surviving blocks keep every catalogue block
    visible while the zeroed ones create unbounded zero runs with bounded
    gaps, killing minimality of the closure's natural candidate subsets.
    """
    if any(primes[i] >= primes[i + 1] for i in range(len(primes) - 1)):
        raise ValueError("primes must be strictly increasing")
    if hi <= lo:
        raise ValueError("empty window")
    if hi - lo > MAX_WINDOW_BITS:
        raise WindowTooLarge(f"window of {hi - lo} bits exceeds budget")
    word = system.window(lo, hi)
    c = len(system.block)
    bits = word.bits.copy()
    prods = []
    P = 1
    for p in primes:
        P *= p
        prods.append(P)
    for pos in range(lo, hi):
        n = pos // c
        for k, P in enumerate(prods, start=1):
            if n % P == (k - 1) % P and n != k - 1:
                bits[pos - lo] = 0
                break
    return BinaryWord(bits, lo)


def close_alpha_block_containment(alpha, beta, n: int) -> bool:
    """Check that every n-block of the beta-coding occurs in the alpha one.

    Valid under two preconditions: alpha's partial quotients are at most 2
    over the tested prefix, and |alpha - beta| < 1/(48 n^2).
    """
    a = RotationCoding.from_real(alpha) if not isinstance(alpha, RotationCoding) else alpha
    b = RotationCoding.from_real(beta) if not isinstance(beta, RotationCoding) else beta
    quotients = []
    num, den = a.alpha.numerator, a.alpha.denominator
    q_prev, q = 0, 1
    while num and q <= 10**6:
        # tested prefix: quotients while the convergent denominator is small
        t, r = divmod(den, num)
        quotients.append(t)
        q_prev, q = q, t * q + q_prev
        num, den = r, num
    if any(t > 2 for t in quotients):
        raise PreconditionUnmet("a partial quotient of alpha exceeds 2")
    if abs(a.alpha - b.alpha) >= Fraction(1, 48 * n * n):
        raise PreconditionUnmet(f"|alpha - beta| is not below 1/(48*{n}^2)")
    return collect_blocks(b, n) <= collect_blocks(a, n)
