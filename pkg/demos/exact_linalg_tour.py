"""
Exact integer linear algebra: Smith normal form and abelian groups
==================================================================

Tour of the arbitrary-precision kernel underneath the topology: Smith
normal form with unimodular witnesses, invariant factors cross-checked
against gcds of minors, and finitely generated abelian groups in
invariant-factor form.

Run with `python demos/exact_linalg_tour.py`.
"""

import random

from spherecross import (
    AbelianGroup,
    IntMatrix,
    cokernel,
    determinant,
    direct_sum,
    rational_rank,
    smith_normal_form,
)
from spherecross.intlinalg import invariant_factors_by_minors

##############################################################################
# A worked decomposition
# ----------------------
#
# smith_normal_form returns U, D, V with U M V = D, U and V unimodular,
# and the diagonal of D nonnegative with each entry dividing the next.
# Everything is a Python int, so there is no overflow to worry about.

m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
snf = smith_normal_form(m)

print("M =", m.to_lists())
print("D =", snf.d.to_lists())
print("invariant factors:", snf.invariant_factors)
print("U M V == D:", snf.u @ m @ snf.v == snf.d)
print("det U =", determinant(snf.u), " det V =", determinant(snf.v))

##############################################################################
# Two independent routes to the same answer
# -----------------------------------------
#
# The k-th determinant divisor is the gcd of all k x k minors, and the
# invariant factors are their successive quotients. That route never
# touches the elimination code, which makes it a useful oracle. Rational
# Gaussian elimination gives a second, torsion-blind opinion on the rank.

print("by minors:", invariant_factors_by_minors(m))
print("rank:", snf.rank, " rational rank:", rational_rank(m))

##############################################################################
# Huge entries stay exact

big = IntMatrix.from_rows([[10**30, 1], [1, 10**30]])
print("det of the 10^30 matrix:", determinant(big))

##############################################################################
# Abelian groups in invariant-factor form
# ---------------------------------------
#
# AbelianGroup(free_rank, torsion) is the canonical form Z^r + Z/d_1 +
# ... + Z/d_k with d_1 | d_2 | ... | d_k. cokernel(M) reads the group
# Z^cols / im(M) off the Smith form; direct_sum re-canonicalizes, so
# Z/2 + Z/3 collapses to Z/6.

print("coker:", cokernel(m))
print("Z/2 + Z/3 =", direct_sum(AbelianGroup(0, (2,)), AbelianGroup(0, (3,))))
print("Z/4 + Z/6 =", direct_sum(AbelianGroup(0, (4,)), AbelianGroup(0, (6,))))

##############################################################################
# Random spot check
# -----------------
#
# The test suite does this over a thousand matrices; five are enough to
# see it happen.

rng = random.Random(7)
for i in range(5):
    r, c = rng.randint(1, 4), rng.randint(1, 4)
    mat = IntMatrix.from_rows(
        [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
    s = smith_normal_form(mat)
    agree = s.invariant_factors == invariant_factors_by_minors(mat)
    print(f"  {r}x{c}: factors {s.invariant_factors}, oracle agrees: {agree}")
