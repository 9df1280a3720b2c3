"""Admissibility tests, exact block counting, and residue-profile recovery.

A finite word is admissible for a moduli set when its support misses at
least one residue class modulo every modulus; these are exactly the finite
patterns of the associated multiple-free subshift.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .core import BinaryWord, BSet
from .errors import Inadmissible, StateSpaceTooLarge

__all__ = [
    "SpectrumProfile",
    "is_admissible",
    "residue_hits",
    "block_complexity",
    "entropy_from_complexity",
    "theta_window",
    "spectrum_profile",
    "minimal_translation_period",
]

# Transfer-state counting keeps one hit-residue subset per modulus; the
# state space is bounded by prod 2^{b_k}, so cap sum b_k.
MAX_STATE_BITS = 24


def residue_hits(word: BinaryWord, bset: BSet) -> list[set[int]]:
    """Residues modulo each b_k hit by the word's support."""
    support = word.support
    return [set(int(n) % b for n in support) for b in bset.moduli]


def is_admissible(word: BinaryWord, bset: BSet) -> bool:
    """True iff the support misses a residue class mod every modulus.

    Depends only on the bits, not the offset, and is hereditary: clearing
    ones never destroys admissibility.
    """
    return all(len(h) < b for h, b in zip(residue_hits(word, bset), bset.moduli))


def block_complexity(bset: BSet, n_max: int, *, max_state_bits: int = MAX_STATE_BITS) -> list[int]:
    """Exact counts p_1..p_{n_max} of admissible words of each length.

    Dynamic programming over equivalence classes of partial words: the
    class of a prefix is the tuple of hit-residue subsets per modulus
    (position residues are implicit in the step index).  Counts are exact
    big integers; reachable for n in the thousands at small moduli where
    naive 2^n enumeration is hopeless.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if sum(bset.moduli) > max_state_bits:
        raise StateSpaceTooLarge(
            f"sum of moduli {sum(bset.moduli)} exceeds budget {max_state_bits}"
        )
    mods = bset.moduli
    # State: tuple of frozensets of hit residues, all proper subsets.
    states: dict[tuple[frozenset, ...], int] = {tuple(frozenset() for _ in mods): 1}
    counts: list[int] = []
    for i in range(n_max):
        nxt: dict[tuple[frozenset, ...], int] = {}
        for state, c in states.items():
            # bit 0 at position i: state unchanged
            nxt[state] = nxt.get(state, 0) + c
            # bit 1 at position i: insert i mod b_k everywhere
            grown = tuple(h | {i % b} for h, b in zip(state, mods))
            if all(len(h) < b for h, b in zip(grown, mods)):
                nxt[grown] = nxt.get(grown, 0) + c
        states = nxt
        counts.append(sum(states.values()))
    return counts


def admissible_words(bset: BSet, n: int):
    """Yield all admissible words of length n as strings, lexicographically.

    Depth-first with exact pruning: a prefix is extendable iff its support
    already misses a residue mod every modulus (the all-zero extension
    then works), so no dead branches are visited.
    """
    mods = bset.moduli
    prefix: list[str] = []
    state: list[tuple[frozenset, ...]] = [tuple(frozenset() for _ in mods)]

    def dfs(i):
        if i == n:
            yield "".join(prefix)
            return
        prefix.append("0")
        yield from dfs(i + 1)
        prefix.pop()
        grown = tuple(h | {i % b} for h, b in zip(state[-1], mods))
        if all(len(h) < b for h, b in zip(grown, mods)):
            prefix.append("1")
            state.append(grown)
            yield from dfs(i + 1)
            state.pop()
            prefix.pop()

    yield from dfs(0)


def entropy_from_complexity(p: list[int]) -> list[float]:
    """Per-length entropy estimates (1/n) log2 p_n, in bits per symbol.

    Each value is an upper bound for the entropy of the counted subshift.
    """
    if not p:
        raise ValueError("need at least one count")
    if any(x < 1 for x in p):
        raise ValueError("counts must be >= 1")
    return [math.log2(x) / (i + 1) for i, x in enumerate(p)]


def theta_window(word: BinaryWord, bset: BSet) -> list[frozenset[int] | None]:
    """Candidate odometer coordinates recovered from a finite window.

    For each modulus the candidates are the negatives of the residues the
    support misses.  A singleton means the coordinate is determined (the
    generic full-support case); a larger set means the window is too short
    to decide; ``None`` means the support covers every residue (the word is
    inadmissible at that modulus).  Ambiguity is reported, never guessed.
    """
    out: list[frozenset[int] | None] = []
    for hits, b in zip(residue_hits(word, bset), bset.moduli):
        missing = set(range(b)) - hits
        out.append(frozenset((-a) % b for a in missing) if missing else None)
    return out


def minimal_translation_period(residues: frozenset[int] | set[int], b: int) -> int:
    """Smallest j >= 1, dividing b, with residues - j == residues (mod b).

    Only divisors of b need checking: translations fixing the set form a
    subgroup of the cyclic group Z/bZ.
    """
    target = frozenset(r % b for r in residues)
    for j in range(1, b + 1):
        if b % j == 0 and frozenset((r - j) % b for r in target) == target:
            return j
    raise AssertionError("unreachable: j = b always fixes the set")


@dataclass(frozen=True)
class SpectrumProfile:
    """Per-modulus record (b_k, s_k, missing residues, minimal period b'_k)."""

    entries: tuple[tuple[int, int, frozenset[int], int], ...]

    def to_json(self) -> str:
        return json.dumps(
            [
                {"b": b, "s": s, "missing": sorted(miss), "b_prime": bp}
                for b, s, miss, bp in self.entries
            ]
        )


def spectrum_profile(word: BinaryWord, bset: BSet) -> SpectrumProfile:
    """Missing residues, their count s_k and minimal period b'_k per modulus.

    Requires the word to be admissible; raises :class:`Inadmissible` with
    the offending modulus index otherwise.
    """
    entries = []
    for k, (hits, b) in enumerate(zip(residue_hits(word, bset), bset.moduli)):
        missing = frozenset(set(range(b)) - hits)
        if not missing:
            raise Inadmissible(k)
        entries.append((b, len(missing), missing, minimal_translation_period(missing, b)))
    return SpectrumProfile(tuple(entries))
