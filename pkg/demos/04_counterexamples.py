"""Two constructions that separate plausible-sounding conjectures from
the truth: a pair of periodic hereditary systems with equal entropy but
different maximal measures, and a transitive point whose closure is a
strictly smaller hereditary system.

Run with: python3 demos/04_counterexamples.py
"""

from fractions import Fraction

from bfree import (
    admissible_words,
    htop_periodic_hereditary,
    minimal_subset_variant,
    mme_block_frequency,
    transitive_closure_point,
    two_mme_system,
    validate_bset,
)

sys_a, sys_b = two_mme_system()
print("blocks:", sys_a.block.to_string(), "and", sys_b.block.to_string())
for s in (sys_a, sys_b):
    print(f"  entropy of hereditary closure of {s.block.to_string()}:",
          htop_periodic_hereditary(s.block).exact, "bits")

# same entropy, yet the aligned-block laws differ on one 9-block
target = sys_a.block
half = Fraction(1, 2)
print(f"frequency of {target.to_string()} under each maximal measure:",
      mme_block_frequency(sys_a, target, half), "vs",
      mme_block_frequency(sys_b, target, half))

# a dense orbit assembled from the full catalogue of allowed blocks,
# padded with zero gaps long enough to keep every factor dominated
bset = validate_bset([2])
point = transitive_closure_point(
    lambda n: admissible_words(bset, n), 0.5, 1, 240
)
print("\ntransitive point prefix:")
print(point.to_string())

# zeroing rare whole blocks preserves density but breaks unique ergodicity
variant = minimal_subset_variant(sys_a, [2, 3], 0, 90)
print("\nblock-thinned variant of the first system:")
print(variant.to_string())
