"""
A pair of diffeomorphisms told apart by smooth invariants only
==============================================================

Walks the running example end to end: two factor-wise diffeomorphisms
of S^3 x S^6 x S^8 whose crossed-product K-theory and periodic cyclic
cohomology dimensions agree, while the cyclic-cohomology grading does
not.

Run with `python demos/invariant_pair.py`.
"""

from spherecross import (
    DiffeoDescriptor,
    SphereProductManifold,
    compare_invariants,
    compare_with_published,
    compute_invariants,
)

##############################################################################
# The manifold and the two maps
# -----------------------------
#
# Both maps rotate the S^3 factor by an irrational angle. They differ in
# where the antipodal flip sits: alpha flips S^6, beta flips S^8. The
# antipodal map on S^n has degree (-1)^(n+1), so the flip on the
# even-dimensional factors acts by -1 on the top class.

manifold = SphereProductManifold((3, 6, 8))
alpha = DiffeoDescriptor(("rotation", "antipodal", "identity"), label="alpha")
beta = DiffeoDescriptor(("rotation", "identity", "antipodal"), label="beta")

print("manifold:", manifold)
for desc in (alpha, beta):
    print(f"  {desc.label}: {', '.join(desc.per_factor)}")

##############################################################################
# Crossed-product K-theory
# ------------------------
#
# K_i of the crossed product is cokernel(1 - action) on one parity plus
# kernel(1 - action) on the other, computed over the integers. The
# kernel summand is free, so the extension splits and the group is a
# well-defined direct sum.

inv_alpha = compute_invariants(manifold, alpha)
inv_beta = compute_invariants(manifold, beta)

for inv in (inv_alpha, inv_beta):
    k = inv.k_theory
    print(f"{inv.descriptor.label}: K_0 = {k.k0}, K_1 = {k.k1}")
    print(f"  K_0 splits as coker {k.k0_cokernel_part} "
          f"(+) ker {k.k0_kernel_part}")

##############################################################################
# Periodic cyclic cohomology of the smooth crossed product
# ---------------------------------------------------------
#
# The six-term sequence in periodic cyclic cohomology produces the same
# kernel/cokernel bookkeeping over the rationals. Dimensions agree for
# the two maps as well: (4, 4) in both parities.

for inv in (inv_alpha, inv_beta):
    h = inv.hp
    print(f"{inv.descriptor.label}: HP = ({h.even_dim}, {h.odd_dim}), "
          f"six-term dims {h.six_term_dims}")

##############################################################################
# The grading is where they differ
# --------------------------------
#
# The graded pieces combine invariants in degree n with coinvariants in
# degree n - 1, so the supported degrees remember which factor was
# flipped. Alpha is supported in odd degrees {1, 3, 9, 11}, beta in
# {1, 3, 7, 9}.

for inv in (inv_alpha, inv_beta):
    g = inv.grading
    print(f"{inv.descriptor.label}: e_dims = {g.e_dims}")
    print(f"  odd support {sorted(g.odd_support)}")

##############################################################################
# Verdicts
# --------

comparison = compare_invariants(manifold, alpha, beta)
print("C*-level:", comparison.cstar_verdict)
print("  ", comparison.cstar_detail)
print("smooth-level:", comparison.smooth_verdict)
print("  ", comparison.smooth_detail)

##############################################################################
# Checking against the published values
# -------------------------------------
#
# The fixture table compares each computed quantity with the published
# display for this instance. The free ranks and odd supports match; the
# 2-torsion rows are flagged because the published display states the
# free part only.

for inv in (inv_alpha, inv_beta):
    print(f"--- {inv.descriptor.label} ---")
    for row in compare_with_published(manifold, inv):
        status = "ok" if row.match else "MISMATCH"
        print(f"  {row.quantity:22s} {status:8s} computed={row.computed!r} "
              f"published={row.published!r}")
