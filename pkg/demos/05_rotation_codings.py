"""Codings of an irrational circle rotation: linear block growth, the
entropy gained by passing to the hereditary closure, and stability of
the block catalogue under small changes of the angle.

Run with: python3 demos/05_rotation_codings.py
"""

from bfree import (
    RotationCoding,
    close_alpha_block_containment,
    collect_blocks,
    hereditary_closure_count,
    hereditary_entropy_estimate,
    rotation_complexity,
    sturmian_window,
)

golden = RotationCoding.golden()
print("angle (first continued-fraction terms):", golden.continued_fraction_prefix(10))
print("coding prefix:", sturmian_window(golden, 0, 40).to_string())

counts = rotation_complexity(golden, 12)
print("\nblock counts p_n (at most 2n + 2):", counts)

# the coding itself has zero entropy; its hereditary closure does not
for n in (6, 10, 14):
    blocks = collect_blocks(golden, n)
    closed = hereditary_closure_count(blocks)
    print(f"n={n:2d}: {len(blocks)} blocks close up to {closed} dominated words")
print("positive-entropy certificate (one density):",
      hereditary_entropy_estimate(golden, 20))

# a tiny perturbation of the angle produces no new short blocks
beta = RotationCoding(golden.alpha_fixed + (1 << 100))
print("\nperturbed coding prefix:", sturmian_window(beta, 0, 40).to_string())
print("4-blocks of perturbed angle all occur for golden:",
      close_alpha_block_containment(golden, beta, 4))
