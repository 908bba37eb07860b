import random

import pytest

from spherecross.fixtures import compare_with_published, discrepancy_notes, named_descriptor
from spherecross.intlinalg import AbelianGroup, IntMatrix
from spherecross.invariants import (
    GRADING_MODEL_TAG,
    VERDICT_DISTINGUISHED,
    VERDICT_INDISTINGUISHABLE,
    CrossedProductKTheory,
    GradingStructure,
    InternalInvariantError,
    PeriodicCyclicCohomology,
    compare_invariants,
    compute_invariants,
    grading_structure,
    hp,
    pv_k_theory,
)
from spherecross.manifold import (
    DiffeoDescriptor,
    GradedAbelianGroup,
    GradedEndomorphism,
    SpaceKTheory,
    SphereProductManifold,
    k_theory_of_space,
    kunneth_homology,
)

M368 = SphereProductManifold((3, 6, 8))
ALPHA = DiffeoDescriptor(("rotation", "antipodal", "identity"), label="alpha")
BETA = DiffeoDescriptor(("rotation", "identity", "antipodal"), label="beta")
TRIVIAL = DiffeoDescriptor(("identity", "identity", "identity"), label="id")


def random_pm_action(rng, h):
    """Arbitrary diagonal +-1 matrices, not necessarily induced by flips."""
    blocks = {}
    for degree, group in h.parts:
        diag = [rng.choice((1, -1)) for _ in range(group.free_rank)]
        blocks[degree] = IntMatrix.diagonal(diag)
    return GradedEndomorphism.from_dict(blocks)


class TestRunningExample:
    def test_alpha_k_theory(self):
        inv = compute_invariants(M368, ALPHA)
        expected = AbelianGroup(4, (2, 2))
        assert inv.k_theory.k0 == expected
        assert inv.k_theory.k1 == expected
        assert inv.k_theory.k0_cokernel_part == AbelianGroup(2, (2, 2))
        assert inv.k_theory.k0_kernel_part == AbelianGroup.free(2)
        assert inv.k_theory.k1_cokernel_part == AbelianGroup(2, (2, 2))
        assert inv.k_theory.k1_kernel_part == AbelianGroup.free(2)
        assert inv.k_theory.extension_splits

    def test_beta_k_theory_same_as_alpha(self):
        ia = compute_invariants(M368, ALPHA)
        ib = compute_invariants(M368, BETA)
        assert (ia.k_theory.k0, ia.k_theory.k1) == (ib.k_theory.k0, ib.k_theory.k1)

    def test_hp_dimensions(self):
        for desc in (ALPHA, BETA):
            inv = compute_invariants(M368, desc)
            assert (inv.hp.even_dim, inv.hp.odd_dim) == (4, 4)
            assert (inv.hp.algebra_even_dim, inv.hp.algebra_odd_dim) == (4, 4)

    def test_alpha_grading(self):
        inv = compute_invariants(M368, ALPHA)
        g = inv.grading
        assert g.eq_dims == ((0, 1), (3, 1), (8, 1), (11, 1))
        assert g.coeq_dims == ((0, 1), (3, 1), (8, 1), (11, 1))
        assert g.e_dims == ((0, 1), (1, 1), (3, 1), (4, 1), (8, 1), (9, 1), (11, 1), (12, 1))
        assert g.odd_support == (1, 3, 9, 11)
        assert g.even_support == (0, 4, 8, 12)
        assert g.total_dim == 8
        assert g.model_tag == GRADING_MODEL_TAG

    def test_beta_grading(self):
        inv = compute_invariants(M368, BETA)
        g = inv.grading
        assert g.eq_dims == ((0, 1), (3, 1), (6, 1), (9, 1))
        assert g.odd_support == (1, 3, 7, 9)
        assert g.even_support == (0, 4, 6, 10)

    def test_verdicts(self):
        comp = compare_invariants(M368, ALPHA, BETA)
        assert comp.cstar_verdict == VERDICT_INDISTINGUISHABLE
        assert comp.smooth_verdict == VERDICT_DISTINGUISHED
        assert "{1, 3, 9, 11}" in comp.smooth_detail
        assert "{1, 3, 7, 9}" in comp.smooth_detail

    def test_self_comparison_indistinguishable(self):
        comp = compare_invariants(M368, ALPHA, ALPHA)
        assert comp.cstar_verdict == VERDICT_INDISTINGUISHABLE
        assert comp.smooth_verdict == VERDICT_INDISTINGUISHABLE

    def test_against_trivial_both_distinguish(self):
        comp = compare_invariants(M368, ALPHA, TRIVIAL)
        assert comp.cstar_verdict == VERDICT_DISTINGUISHED
        assert comp.smooth_verdict == VERDICT_DISTINGUISHED

    def test_trivial_action_doubles_k_theory(self):
        # crossed product by the identity: K_i = K_i(space) + K_{1-i}(space)
        inv = compute_invariants(M368, TRIVIAL)
        assert inv.k_theory.k0 == AbelianGroup.free(8)
        assert inv.k_theory.k1 == AbelianGroup.free(8)
        assert (inv.hp.even_dim, inv.hp.odd_dim) == (8, 8)


class TestFixtures:
    def test_named_descriptors(self):
        assert named_descriptor("alpha") == ALPHA
        assert named_descriptor("beta") == BETA
        assert named_descriptor("gamma") is None

    def test_fixture_rows_for_alpha(self):
        inv = compute_invariants(M368, ALPHA)
        rows = compare_with_published(M368, inv)
        by_name = {r.quantity: r for r in rows}
        assert by_name["K_0 free rank"].match
        assert by_name["K_1 free rank"].match
        assert by_name["HP even dim"].match
        assert by_name["HP odd dim"].match
        assert by_name["grading odd support"].match
        # the two known disclosure points
        assert not by_name["K_0 torsion"].match
        assert not by_name["grading even support"].match
        assert "2-torsion" in by_name["K_0 torsion"].note
        notes = discrepancy_notes(rows)
        assert any("torsion" in n for n in notes)
        assert any("even-degree" in n for n in notes)

    def test_no_fixture_for_other_manifolds(self):
        m = SphereProductManifold((3, 6))
        d = DiffeoDescriptor(("rotation", "antipodal"))
        inv = compute_invariants(m, d)
        assert compare_with_published(m, inv) == ()


class TestConsistencyProperties:
    def test_random_pm_actions(self):
        rng = random.Random(20260814)
        for _ in range(60):
            dims = tuple(rng.randint(1, 8) for _ in range(rng.randint(1, 4)))
            m = SphereProductManifold(dims)
            h = kunneth_homology(m)
            action = random_pm_action(rng, h)
            space = k_theory_of_space(m)
            kt = pv_k_theory(space, action)
            totals = hp(h, action)
            g = grading_structure(h, action)

            # closed-form oracle for diagonal +-1 actions
            plus_even = minus_even = plus_odd = minus_odd = 0
            for degree, mat in action.blocks:
                for i in range(mat.rows):
                    v = mat.entry(i, i)
                    if degree % 2 == 0:
                        plus_even += v == 1
                        minus_even += v == -1
                    else:
                        plus_odd += v == 1
                        minus_odd += v == -1
            assert kt.k0 == AbelianGroup(plus_even + plus_odd, (2,) * minus_even)
            assert kt.k1 == AbelianGroup(plus_odd + plus_even, (2,) * minus_odd)
            assert (totals.even_dim, totals.odd_dim) == (
                plus_odd + plus_even, plus_even + plus_odd)
            assert g.total_dim == totals.even_dim + totals.odd_dim

    def test_identity_action_grading_is_two_per_rank(self):
        h = kunneth_homology(M368)
        action = GradedEndomorphism.from_dict(
            {d: IntMatrix.identity(g.free_rank) for d, g in h.parts}
        )
        g = grading_structure(h, action)
        # eq and shifted coeq both contribute the full rank
        assert g.total_dim == 2 * h.total_free_rank


class TestValidationAndErrors:
    def test_pv_rejects_torsion_input(self):
        torsion = GradedAbelianGroup(((0, AbelianGroup(1, (2,))),))
        space = SpaceKTheory(
            k0=AbelianGroup(1, (2,)), k1=AbelianGroup.trivial(),
            even=torsion, odd=GradedAbelianGroup(()),
        )
        action = GradedEndomorphism.from_dict({0: IntMatrix.identity(1)})
        with pytest.raises(ValueError):
            pv_k_theory(space, action)

    def test_action_size_mismatch(self):
        h = kunneth_homology(M368)
        bad = GradedEndomorphism.from_dict({0: IntMatrix.identity(2)})
        with pytest.raises(ValueError):
            hp(h, bad)

    def test_inconsistent_k_theory_parts_raise(self):
        with pytest.raises(InternalInvariantError):
            CrossedProductKTheory(
                k0=AbelianGroup.free(3),  # should be Z^2
                k1=AbelianGroup.free(2),
                k0_cokernel_part=AbelianGroup.free(1),
                k0_kernel_part=AbelianGroup.free(1),
                k1_cokernel_part=AbelianGroup.free(1),
                k1_kernel_part=AbelianGroup.free(1),
            )

    def test_inconsistent_six_term_raises(self):
        with pytest.raises(InternalInvariantError):
            PeriodicCyclicCohomology(
                even_dim=3, odd_dim=4, algebra_even_dim=4, algebra_odd_dim=4)

    def test_inconsistent_grading_raises(self):
        with pytest.raises(InternalInvariantError):
            GradingStructure(
                eq_dims=((0, 1),), coeq_dims=(), e_dims=((0, 2),),
                odd_support=())

    def test_odd_support_must_match_e_dims(self):
        with pytest.raises(InternalInvariantError):
            GradingStructure(
                eq_dims=((3, 1),), coeq_dims=(), e_dims=((3, 1),),
                odd_support=())
