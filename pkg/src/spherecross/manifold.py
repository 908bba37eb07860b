"""Products of spheres, factor-wise diffeomorphisms, induced graded maps.

The manifolds handled here are M = S^{n_1} x ... x S^{n_k}. Their homology
is torsion-free with a Kunneth basis indexed by subsets of factors (take the
fundamental class on the chosen factors, the point class on the rest), so a
graded group is described by one free abelian group per degree and a graded
endomorphism by one integer matrix per degree. For these manifolds homology
and cohomology agree degree by degree, and we do not distinguish them.

Factor actions are restricted to the three kinds the rest of the pipeline
understands: `identity`, `rotation` (an isotopy of the identity; only
sensible on odd-dimensional spheres, where free circle actions exist), and
`antipodal`. The induced map on the degree-n class of S^n is +1 for the
first two and (-1)^(n+1) for the antipodal map.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .intlinalg import AbelianGroup, IntMatrix, direct_sum

IDENTITY = "identity"
ROTATION = "rotation"
ANTIPODAL = "antipodal"
ACTION_TAGS = (IDENTITY, ROTATION, ANTIPODAL)


class DescriptorError(ValueError):
    """A diffeomorphism descriptor does not fit the given manifold."""


@dataclass(frozen=True)
class SphereProductManifold:
    """Product of spheres, given by the tuple of factor dimensions."""

    factor_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.factor_dims)
        if not dims:
            raise ValueError("need at least one sphere factor")
        if any(n < 1 for n in dims):
            raise ValueError(f"factor dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def num_factors(self) -> int:
        return len(self.factor_dims)

    @property
    def total_dim(self) -> int:
        return sum(self.factor_dims)

    def subset_degree(self, subset) -> int:
        return sum(self.factor_dims[i] for i in subset)

    def basis(self) -> tuple:
        """Kunneth basis: all factor subsets, sorted by (degree, subset)."""
        subsets = []
        for k in range(self.num_factors + 1):
            subsets.extend(combinations(range(self.num_factors), k))
        return tuple(sorted(subsets, key=lambda s: (self.subset_degree(s), s)))

    def basis_by_degree(self) -> dict:
        out: dict = {}
        for s in self.basis():
            out.setdefault(self.subset_degree(s), []).append(s)
        return {d: tuple(v) for d, v in out.items()}

    def __str__(self):
        return " x ".join(f"S^{n}" for n in self.factor_dims)


@dataclass(frozen=True)
class GradedAbelianGroup:
    """Finite collection of abelian groups indexed by degree.

    Stored as a sorted tuple of (degree, group) pairs with trivial degrees
    dropped, so equal gradings compare equal.
    """

    parts: tuple

    def __post_init__(self):
        cleaned = []
        seen = set()
        for degree, group in self.parts:
            degree = int(degree)
            if degree in seen:
                raise ValueError(f"degree {degree} listed twice")
            seen.add(degree)
            if not isinstance(group, AbelianGroup):
                raise TypeError("parts must map degrees to AbelianGroup")
            if not group.is_trivial:
                cleaned.append((degree, group))
        object.__setattr__(self, "parts", tuple(sorted(cleaned)))

    @classmethod
    def from_dict(cls, d: dict) -> "GradedAbelianGroup":
        return cls(tuple(d.items()))

    def __getitem__(self, degree: int) -> AbelianGroup:
        for deg, group in self.parts:
            if deg == degree:
                return group
        return AbelianGroup.trivial()

    @property
    def degrees(self) -> tuple:
        return tuple(deg for deg, _ in self.parts)

    @property
    def total_free_rank(self) -> int:
        return sum(g.free_rank for _, g in self.parts)

    def parity_part(self, parity: int) -> "GradedAbelianGroup":
        if parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        return GradedAbelianGroup(
            tuple((d, g) for d, g in self.parts if d % 2 == parity)
        )

    def collapse(self) -> AbelianGroup:
        """Forget the grading: direct sum of all parts."""
        return direct_sum(*(g for _, g in self.parts)) if self.parts else AbelianGroup.trivial()

    def __str__(self):
        if not self.parts:
            return "0"
        return ", ".join(f"H_{d} = {g}" for d, g in self.parts)


@dataclass(frozen=True)
class GradedEndomorphism:
    """Degree-wise integer matrices of a graded map.

    Matrices act on the ordered basis that `SphereProductManifold.basis`
    fixes per degree. Degrees without an entry are the zero group.
    """

    blocks: tuple

    def __post_init__(self):
        cleaned = []
        seen = set()
        for degree, mat in self.blocks:
            degree = int(degree)
            if degree in seen:
                raise ValueError(f"degree {degree} listed twice")
            seen.add(degree)
            if not isinstance(mat, IntMatrix):
                raise TypeError("blocks must map degrees to IntMatrix")
            if not mat.is_square():
                raise ValueError(f"block in degree {degree} is not square")
            if mat.rows:
                cleaned.append((degree, mat))
        object.__setattr__(self, "blocks", tuple(sorted(cleaned)))

    @classmethod
    def from_dict(cls, d: dict) -> "GradedEndomorphism":
        return cls(tuple(d.items()))

    def __getitem__(self, degree: int) -> IntMatrix:
        for deg, mat in self.blocks:
            if deg == degree:
                return mat
        return IntMatrix.zeros(0, 0)

    @property
    def degrees(self) -> tuple:
        return tuple(deg for deg, _ in self.blocks)

    def compose(self, other: "GradedEndomorphism") -> "GradedEndomorphism":
        degs = sorted(set(self.degrees) | set(other.degrees))
        return GradedEndomorphism(
            tuple((d, self[d] @ other[d]) for d in degs)
        )

    def compatible_with(self, graded: GradedAbelianGroup) -> bool:
        degs = set(self.degrees) | set(graded.degrees)
        return all(self[d].rows == graded[d].free_rank for d in degs)


@dataclass(frozen=True)
class DiffeoDescriptor:
    """Diffeomorphism of a sphere product, one action tag per factor.

    `conjugated` records that the map has been conjugated by some
    orientation-preserving diffeomorphism; that changes the smooth dynamics
    but not any induced map on homology, so everything in this module
    ignores it.
    """

    per_factor: tuple
    label: str = ""
    conjugated: bool = False

    def __post_init__(self):
        tags = tuple(str(t) for t in self.per_factor)
        for t in tags:
            if t not in ACTION_TAGS:
                raise DescriptorError(
                    f"unknown action tag {t!r}; expected one of {ACTION_TAGS}"
                )
        object.__setattr__(self, "per_factor", tags)

    @classmethod
    def parse(cls, text: str, label: str = "") -> "DiffeoDescriptor":
        tags = tuple(t.strip() for t in text.split(",") if t.strip())
        if not tags:
            raise DescriptorError("empty action list")
        return cls(per_factor=tags, label=label)

    def validate_for(self, manifold: SphereProductManifold) -> None:
        if len(self.per_factor) != manifold.num_factors:
            raise DescriptorError(
                f"descriptor has {len(self.per_factor)} factor actions but "
                f"{manifold} has {manifold.num_factors} factors"
            )
        for i, (tag, dim) in enumerate(zip(self.per_factor, manifold.factor_dims)):
            if tag == ROTATION and dim % 2 == 0:
                raise DescriptorError(
                    f"factor {i}: rotation needs an odd-dimensional sphere, got S^{dim}"
                )

    def __str__(self):
        body = ",".join(self.per_factor)
        return f"{self.label}=({body})" if self.label else f"({body})"


def action_sign(tag: str, dim: int) -> int:
    """Induced sign on the top class of S^dim."""
    if tag in (IDENTITY, ROTATION):
        return 1
    if tag == ANTIPODAL:
        return (-1) ** (dim + 1)
    raise DescriptorError(f"unknown action tag {tag!r}")


def kunneth_homology(manifold: SphereProductManifold) -> GradedAbelianGroup:
    """Homology of the product, one Z per Kunneth basis element."""
    counts: dict = {}
    for s in manifold.basis():
        d = manifold.subset_degree(s)
        counts[d] = counts.get(d, 0) + 1
    return GradedAbelianGroup.from_dict(
        {d: AbelianGroup.free(n) for d, n in counts.items()}
    )


def induced_graded_map(manifold: SphereProductManifold,
                       descriptor: DiffeoDescriptor) -> GradedEndomorphism:
    """Matrices of the induced map on homology in the Kunneth basis.

    A factor-wise map sends each basis subset to itself scaled by the
    product of its factor signs, so every block is diagonal with entries
    +-1.
    """
    descriptor.validate_for(manifold)
    signs = [action_sign(t, n)
             for t, n in zip(descriptor.per_factor, manifold.factor_dims)]
    blocks = {}
    for degree, subsets in manifold.basis_by_degree().items():
        diag = []
        for s in subsets:
            sign = 1
            for i in s:
                sign *= signs[i]
            diag.append(sign)
        blocks[degree] = IntMatrix.diagonal(diag)
    return GradedEndomorphism.from_dict(blocks)


@dataclass(frozen=True)
class SpaceKTheory:
    """Topological K-theory of the product, with its degree decomposition.

    For a product of spheres the Chern character is integral and the
    K-groups are the free groups K^0 = sum of even homology, K^1 = sum of
    odd homology; `even` and `odd` retain the degree splitting that the
    graded endomorphisms act through.
    """

    k0: AbelianGroup
    k1: AbelianGroup
    even: GradedAbelianGroup
    odd: GradedAbelianGroup


def k_theory_of_space(manifold: SphereProductManifold) -> SpaceKTheory:
    h = kunneth_homology(manifold)
    even = h.parity_part(0)
    odd = h.parity_part(1)
    return SpaceKTheory(
        k0=even.collapse(),
        k1=odd.collapse(),
        even=even,
        odd=odd,
    )
