import random
from itertools import combinations

import pytest

from spherecross.intlinalg import AbelianGroup, IntMatrix
from spherecross.manifold import (
    ANTIPODAL,
    IDENTITY,
    ROTATION,
    DescriptorError,
    DiffeoDescriptor,
    GradedAbelianGroup,
    GradedEndomorphism,
    SphereProductManifold,
    action_sign,
    induced_graded_map,
    k_theory_of_space,
    kunneth_homology,
)

M368 = SphereProductManifold((3, 6, 8))


class TestManifold:
    def test_validation(self):
        with pytest.raises(ValueError):
            SphereProductManifold(())
        with pytest.raises(ValueError):
            SphereProductManifold((3, 0))

    def test_basis_for_running_example(self):
        degrees = [M368.subset_degree(s) for s in M368.basis()]
        assert degrees == [0, 3, 6, 8, 9, 11, 14, 17]
        assert M368.basis()[0] == ()
        assert M368.basis()[-1] == (0, 1, 2)
        assert M368.total_dim == 17

    def test_basis_ordering_degree_then_subset(self):
        m = SphereProductManifold((2, 2, 3))
        b = m.basis()
        degrees = [m.subset_degree(s) for s in b]
        assert degrees == sorted(degrees)
        # within equal degree, lexicographic on the index tuple
        assert b.index((0,)) < b.index((1,))

    def test_basis_size_is_power_of_two(self):
        rng = random.Random(1)
        for _ in range(20):
            dims = tuple(rng.randint(1, 8) for _ in range(rng.randint(1, 4)))
            m = SphereProductManifold(dims)
            assert len(m.basis()) == 2 ** len(dims)

    def test_kunneth_against_enumeration(self):
        rng = random.Random(2)
        for _ in range(30):
            dims = tuple(rng.randint(1, 8) for _ in range(rng.randint(1, 4)))
            m = SphereProductManifold(dims)
            h = kunneth_homology(m)
            # brute-force count of subset degree multiplicities
            counts = {}
            for k in range(len(dims) + 1):
                for s in combinations(range(len(dims)), k):
                    d = sum(dims[i] for i in s)
                    counts[d] = counts.get(d, 0) + 1
            for d, n in counts.items():
                assert h[d] == AbelianGroup.free(n)
            assert h.total_free_rank == 2 ** len(dims)

    def test_torus_case_has_multiplicity(self):
        h = kunneth_homology(SphereProductManifold((1, 1)))
        assert h[1] == AbelianGroup.free(2)


class TestGradedContainers:
    def test_trivial_parts_dropped(self):
        g = GradedAbelianGroup(((0, AbelianGroup.free(1)), (2, AbelianGroup.trivial())))
        assert g.degrees == (0,)
        assert g[2] == AbelianGroup.trivial()

    def test_duplicate_degree_rejected(self):
        with pytest.raises(ValueError):
            GradedAbelianGroup(((0, AbelianGroup.free(1)), (0, AbelianGroup.free(2))))

    def test_parity_split(self):
        h = kunneth_homology(M368)
        assert h.parity_part(0).degrees == (0, 6, 8, 14)
        assert h.parity_part(1).degrees == (3, 9, 11, 17)
        assert h.parity_part(0).total_free_rank == 4

    def test_collapse(self):
        h = kunneth_homology(M368)
        assert h.collapse() == AbelianGroup.free(8)

    def test_endomorphism_compose(self):
        a = GradedEndomorphism.from_dict({0: IntMatrix.diagonal([-1])})
        assert a.compose(a)[0] == IntMatrix.identity(1)


class TestDescriptor:
    def test_parse(self):
        d = DiffeoDescriptor.parse("rotation, antipodal, identity", label="alpha")
        assert d.per_factor == (ROTATION, ANTIPODAL, IDENTITY)
        assert str(d) == "alpha=(rotation,antipodal,identity)"

    def test_unknown_tag(self):
        with pytest.raises(DescriptorError):
            DiffeoDescriptor(("spin",))

    def test_arity_checked_against_manifold(self):
        d = DiffeoDescriptor((IDENTITY, IDENTITY))
        with pytest.raises(DescriptorError):
            d.validate_for(M368)

    def test_rotation_needs_odd_sphere(self):
        d = DiffeoDescriptor((IDENTITY, ROTATION, IDENTITY))
        with pytest.raises(DescriptorError):
            d.validate_for(M368)
        # fine on the odd factor
        DiffeoDescriptor((ROTATION, IDENTITY, IDENTITY)).validate_for(M368)


class TestInducedMap:
    def test_action_signs(self):
        assert action_sign(IDENTITY, 6) == 1
        assert action_sign(ROTATION, 3) == 1
        # antipodal: degree (-1)^(n+1)
        assert action_sign(ANTIPODAL, 3) == 1
        assert action_sign(ANTIPODAL, 6) == -1
        assert action_sign(ANTIPODAL, 8) == -1

    def test_alpha_signs_by_degree(self):
        alpha = DiffeoDescriptor((ROTATION, ANTIPODAL, IDENTITY), label="alpha")
        a = induced_graded_map(M368, alpha)
        signs = {d: a[d].entry(0, 0) for d in a.degrees}
        assert signs == {0: 1, 3: 1, 6: -1, 8: 1, 9: -1, 11: 1, 14: -1, 17: -1}

    def test_beta_signs_by_degree(self):
        beta = DiffeoDescriptor((ROTATION, IDENTITY, ANTIPODAL), label="beta")
        b = induced_graded_map(M368, beta)
        signs = {d: b[d].entry(0, 0) for d in b.degrees}
        assert signs == {0: 1, 3: 1, 6: 1, 8: -1, 9: 1, 11: -1, 14: -1, 17: -1}

    def test_subset_sign_is_product_of_factor_signs(self):
        rng = random.Random(3)
        tags = (IDENTITY, ROTATION, ANTIPODAL)
        for _ in range(40):
            k = rng.randint(1, 4)
            dims = tuple(rng.randint(1, 8) for _ in range(k))
            per_factor = tuple(
                rng.choice(tuple(t for t in tags if not (t == ROTATION and dims[i] % 2 == 0)))
                for i in range(k)
            )
            m = SphereProductManifold(dims)
            d = DiffeoDescriptor(per_factor)
            a = induced_graded_map(m, d)
            by_degree = m.basis_by_degree()
            for degree, subsets in by_degree.items():
                mat = a[degree]
                for row, s in enumerate(subsets):
                    expected = 1
                    for i in s:
                        expected *= action_sign(per_factor[i], dims[i])
                    assert mat.entry(row, row) == expected
                # off-diagonal is zero
                n = len(subsets)
                off = [mat.entry(i, j) for i in range(n) for j in range(n) if i != j]
                assert all(e == 0 for e in off)

    def test_involution_on_homology(self):
        # any pattern of flips squares to the identity degree-wise
        d = DiffeoDescriptor((ANTIPODAL, ANTIPODAL, ANTIPODAL))
        a = induced_graded_map(M368, d)
        sq = a.compose(a)
        for degree in a.degrees:
            assert sq[degree] == IntMatrix.identity(a[degree].rows)

    def test_conjugated_flag_does_not_change_induced_map(self):
        plain = DiffeoDescriptor((ROTATION, ANTIPODAL, IDENTITY))
        conj = DiffeoDescriptor((ROTATION, ANTIPODAL, IDENTITY), conjugated=True)
        assert induced_graded_map(M368, plain) == induced_graded_map(M368, conj)


class TestSpaceKTheory:
    def test_running_example(self):
        kt = k_theory_of_space(M368)
        assert kt.k0 == AbelianGroup.free(4)
        assert kt.k1 == AbelianGroup.free(4)
        assert kt.even.degrees == (0, 6, 8, 14)
        assert kt.odd.degrees == (3, 9, 11, 17)

    def test_total_rank_splits_by_parity(self):
        rng = random.Random(8)
        for _ in range(20):
            dims = tuple(rng.randint(1, 8) for _ in range(rng.randint(1, 4)))
            m = SphereProductManifold(dims)
            kt = k_theory_of_space(m)
            assert kt.k0.free_rank + kt.k1.free_rank == 2 ** len(dims)
            assert kt.k0.is_free and kt.k1.is_free
