"""Walk through the basic objects: the free-point sequence of a set of
pairwise coprime moduli, its odometer codings, and exact block counting.

Run with: python3 demos/01_sieves_and_complexity.py
"""

from bfree import (
    OdometerPoint,
    SAProfile,
    block_complexity,
    crt_free_count,
    entropy_from_complexity,
    eta_window,
    phi_sa_window,
    phi_window,
    validate_bset,
)

bset = validate_bset([2, 3, 5])
print(f"moduli {bset.moduli}, period {bset.period}")

# the characteristic sequence of integers avoiding every residue class 0
word = eta_window(bset, 0, 30)
print("eta[0:30] =", word.to_string())
print("free residues per period:", crt_free_count(bset), "of", bset.period)

# shifting the odometer point relabels which residues are forbidden
for residues in [(0, 0, 0), (1, 0, 0), (1, 2, 4)]:
    omega = OdometerPoint(bset, residues)
    print(f"phi{residues}[0:30] =", phi_window(omega, 0, 30).to_string())

# several forbidden residues per modulus; density drops accordingly
profile = SAProfile(
    validate_bset([4, 9]), (2, 3), (frozenset({0, 2}), frozenset({0, 3, 6}))
)
w = phi_sa_window(profile, (0, 0), 0, profile.bset.period)
print(f"\ngeneralized sieve, s={profile.s}: {w.ones}/{len(w)} ones per period")
print("expected density:", profile.free_density())

# exact block counts and the entropy they converge to
counts = block_complexity(validate_bset([2, 3]), 24)
rates = entropy_from_complexity(counts)
print("\nn, p_n, (1/n) log2 p_n for moduli (2, 3):")
for n in (1, 2, 3, 6, 12, 24):
    print(f"  {n:3d}  {counts[n - 1]:10d}  {rates[n - 1]:.5f}")
print("limit is 1/3 bits:", float(1 / 3))
