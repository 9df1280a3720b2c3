"""Recovering the sieve parameters from a long observed window, and
deciding containment between two hereditary systems by pure arithmetic.

Run with: python3 demos/03_spectrum_and_inclusion.py
"""

from bfree import (
    construct_admissible,
    eta_window,
    includes,
    inclusion_witness,
    sample_mirsky,
    spectrum_profile,
    theta_window,
    validate_bset,
    word_level_includes,
)

# a window of the free sequence for (2, 3) pins down the odometer point
bset = validate_bset([2, 3])
w = eta_window(bset, 0, 30)
print("candidates per modulus:", [sorted(c) for c in theta_window(w, bset)])

# one Haar-random coding of moduli (3,) looks 9-periodic with three
# equally spaced missing residues; the profile detects the true period 3
batch = sample_mirsky(validate_bset([3]), 0, 200, 1, seed=11)
entry = spectrum_profile(batch.words[0], validate_bset([9])).entries[0]
print("observed through modulus 9:", entry)

# containment reduces to a divisibility check between the moduli sets
pairs = [([2], [4]), ([2, 3], [6]), ([2, 3], [5]), ([3], [2, 3])]
for a, b in pairs:
    x, y = validate_bset(a), validate_bset(b)
    arith = includes(x, y)
    words = word_level_includes(x, y)
    print(f"X{a} contains X{b}: {arith} (word-level oracle: {words})")

# when containment fails, a single admissible word separates the systems
witness = inclusion_witness(validate_bset([2, 3]), validate_bset([5]))
print("separating word:", witness.to_string())

# five integers, one per residue class mod 5, all coprime to 2 and 3
print("admissible covering set:", sorted(construct_admissible([2, 3], 5)))
