"""Numerical dynamics on S^3 x S^6 x S^8.

This module iterates the concrete diffeomorphisms whose algebraic
invariants the rest of the package computes: a rotation by angle t (in
turns) on the S^3 factor, viewed as the unit sphere of C^2 with coordinates
(a2, a3), optionally composed with the antipodal map on S^6 and/or S^8. The
rotation is applied first, the flips after; since they act on different
factors the order is a convention, not a constraint.

Provided here:

* orbit iteration with norm-drift control,
* Monte Carlo estimation of the mapping degree on each factor,
* Birkhoff averages of named observables along orbits,
* a density check for orbit closures of the rotation parameter.

Floating point is numpy float64/complex128 throughout. All randomness is
counter-based (Philox) keyed by (seed, chunk index), and reductions run in
fixed chunk order, so every number is reproducible from the seed alone no
matter how the work is batched.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

S3_AMBIENT = 2   # complex coordinates (a2, a3)
S6_AMBIENT = 7
S8_AMBIENT = 9
FACTOR_NAMES = ("s3", "s6", "s8")


@dataclass(frozen=True)
class Tolerances:
    """Numerical control knobs, kept in one place on purpose.

    unit_norm:       max |norm - 1| accepted for input points
    renorm_trigger:  drift beyond which an orbit renormalizes the S^3 factor
    involution:      max error when checking that a flip squares to the identity
    group_law:       max error in compose-vs-apply consistency checks
    degree_reject:   max |raw mean - nearest integer| before a degree
                     estimate refuses to round
    rational_angle:  absolute gap under which a rotation angle is treated as
                     rational (and density checks are refused)
    """

    unit_norm: float = 1e-12
    renorm_trigger: float = 1e-13
    involution: float = 1e-15
    group_law: float = 1e-12
    degree_reject: float = 0.2
    rational_angle: float = 1e-12


TOLERANCES = Tolerances()


class DegreeEstimateError(RuntimeError):
    """A Monte Carlo degree estimate refused to round to an integer."""


@dataclass(frozen=True, eq=False)
class ProductPoint:
    """A point of S^3 x S^6 x S^8.

    s3 is complex of shape (2,), s6 and s8 real of shapes (7,) and (9,).
    Arrays are copied in and frozen; points are immutable values.
    """

    s3: np.ndarray
    s6: np.ndarray
    s8: np.ndarray

    def __post_init__(self):
        s3 = np.array(self.s3, dtype=np.complex128, copy=True)
        s6 = np.array(self.s6, dtype=np.float64, copy=True)
        s8 = np.array(self.s8, dtype=np.float64, copy=True)
        for name, arr, want in (("s3", s3, S3_AMBIENT), ("s6", s6, S6_AMBIENT),
                                ("s8", s8, S8_AMBIENT)):
            if arr.shape != (want,):
                raise ValueError(f"{name} must have shape ({want},), got {arr.shape}")
            arr.setflags(write=False)
        object.__setattr__(self, "s3", s3)
        object.__setattr__(self, "s6", s6)
        object.__setattr__(self, "s8", s8)

    @property
    def norms(self) -> tuple:
        return (float(np.linalg.norm(self.s3)),
                float(np.linalg.norm(self.s6)),
                float(np.linalg.norm(self.s8)))

    def max_unit_defect(self) -> float:
        return max(abs(n - 1.0) for n in self.norms)

    def distance_to(self, other: "ProductPoint") -> float:
        return max(
            float(np.max(np.abs(self.s3 - other.s3))),
            float(np.max(np.abs(self.s6 - other.s6))),
            float(np.max(np.abs(self.s8 - other.s8))),
        )

    @classmethod
    def base(cls) -> "ProductPoint":
        s3 = np.zeros(S3_AMBIENT, dtype=np.complex128)
        s3[0] = 1.0
        s6 = np.zeros(S6_AMBIENT)
        s6[0] = 1.0
        s8 = np.zeros(S8_AMBIENT)
        s8[0] = 1.0
        return cls(s3, s6, s8)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "ProductPoint":
        """Uniform on the product (normalized Gaussians factor-wise)."""
        g3 = rng.standard_normal(2 * S3_AMBIENT)
        s3 = g3[0::2] + 1j * g3[1::2]
        s3 /= np.linalg.norm(s3)
        s6 = rng.standard_normal(S6_AMBIENT)
        s6 /= np.linalg.norm(s6)
        s8 = rng.standard_normal(S8_AMBIENT)
        s8 /= np.linalg.norm(s8)
        return cls(s3, s6, s8)


def random_points(num: int, seed: int) -> tuple:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    return tuple(ProductPoint.random(rng) for _ in range(num))


def _require_unit(point: ProductPoint, tolerances: Tolerances) -> None:
    defect = point.max_unit_defect()
    if defect > tolerances.unit_norm:
        raise ValueError(
            f"point is off the sphere product by {defect:.3e} "
            f"(tolerance {tolerances.unit_norm:.3e})"
        )


@dataclass(frozen=True)
class DynamicsMap:
    """Rotation by `angle` turns on S^3, then optional antipodal flips.

    These maps form a group isomorphic to (R/Z) x Z/2 x Z/2, which is what
    `compose` and `inverse` implement. The identity is DynamicsMap(0.0).
    """

    angle: float
    flip_s6: bool = False
    flip_s8: bool = False

    def __post_init__(self):
        object.__setattr__(self, "angle", float(self.angle) % 1.0)

    @property
    def phase(self) -> complex:
        return complex(np.exp(2j * np.pi * self.angle))

    def compose(self, other: "DynamicsMap") -> "DynamicsMap":
        return DynamicsMap(
            angle=(self.angle + other.angle) % 1.0,
            flip_s6=self.flip_s6 ^ other.flip_s6,
            flip_s8=self.flip_s8 ^ other.flip_s8,
        )

    def inverse(self) -> "DynamicsMap":
        return DynamicsMap(angle=(-self.angle) % 1.0,
                           flip_s6=self.flip_s6, flip_s8=self.flip_s8)

    @classmethod
    def from_actions(cls, per_factor, angle: float) -> "DynamicsMap":
        """Build the map realizing (s3_action, s6_action, s8_action).

        On S^3, `identity` forces angle 0 and `antipodal` is the rotation by
        half a turn; `rotation` uses the given angle. On the even factors
        only `identity` and `antipodal` are realizable here.
        """
        tags = tuple(per_factor)
        if len(tags) != 3:
            raise ValueError(f"expected 3 factor actions, got {len(tags)}")
        s3_tag, s6_tag, s8_tag = tags
        if s3_tag == "rotation":
            a = angle
        elif s3_tag == "identity":
            a = 0.0
        elif s3_tag == "antipodal":
            a = 0.5
        else:
            raise ValueError(f"unknown action {s3_tag!r} on the S^3 factor")
        flips = []
        for name, tag in (("s6", s6_tag), ("s8", s8_tag)):
            if tag == "antipodal":
                flips.append(True)
            elif tag == "identity":
                flips.append(False)
            else:
                raise ValueError(f"action {tag!r} is not realizable on the {name} factor")
        return cls(angle=a, flip_s6=flips[0], flip_s8=flips[1])


def apply_map(dmap: DynamicsMap, point: ProductPoint,
              tolerances: Tolerances = TOLERANCES) -> ProductPoint:
    """One application of the map, with drift control on the S^3 factor."""
    _require_unit(point, tolerances)
    s3 = point.s3 * dmap.phase
    norm = float(np.linalg.norm(s3))
    if abs(norm - 1.0) > tolerances.renorm_trigger:
        s3 = s3 / norm
    s6 = -point.s6 if dmap.flip_s6 else point.s6
    s8 = -point.s8 if dmap.flip_s8 else point.s8
    return ProductPoint(s3, s6, s8)


def orbit(dmap: DynamicsMap, start: ProductPoint, n: int,
          tolerances: Tolerances = TOLERANCES):
    """Yield start, f(start), ..., f^(n-1)(start).

    Step arithmetic is identical to `apply_map` (same multiplications, same
    renormalization rule), so the k-th yielded point equals k applications
    of `apply_map` bit for bit; the flips are tracked as an exact sign.
    """
    if n < 0:
        raise ValueError("orbit length must be non-negative")
    _require_unit(start, tolerances)
    a = np.array(start.s3, dtype=np.complex128)
    phase = dmap.phase
    sign6 = sign8 = 1.0
    for _ in range(n):
        yield ProductPoint(a, sign6 * start.s6, sign8 * start.s8)
        a = a * phase
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > tolerances.renorm_trigger:
            a = a / norm
        if dmap.flip_s6:
            sign6 = -sign6
        if dmap.flip_s8:
            sign8 = -sign8


def composition_defect(f: DynamicsMap, g: DynamicsMap, point: ProductPoint,
                       tolerances: Tolerances = TOLERANCES) -> float:
    """Max coordinate gap between (f.compose(g))(x) and f(g(x)).

    The group law holds exactly for the flips; on S^3 the two routes differ
    by the rounding of one angle addition, so the defect is a few ulps.
    """
    one_shot = apply_map(f.compose(g), point, tolerances)
    two_step = apply_map(f, apply_map(g, point, tolerances), tolerances)
    return one_shot.distance_to(two_step)


# ---------------------------------------------------------------------------
# observables and Birkhoff averages

def _obs_one(p: ProductPoint) -> complex:
    return 1.0 + 0.0j


def _obs_s3_character(p: ProductPoint) -> complex:
    # unit phase of a2; undefined on the great circle a2 = 0
    a2 = complex(p.s3[0])
    r = abs(a2)
    if r < 1e-9:
        raise ValueError("s3_character is undefined near a2 = 0")
    return a2 / r


def _obs_s6_first_coord(p: ProductPoint) -> complex:
    return complex(p.s6[0])


OBSERVABLES = {
    "one": _obs_one,
    "s3_character": _obs_s3_character,
    "s6_first_coord": _obs_s6_first_coord,
}


@dataclass(frozen=True, eq=False)
class BirkhoffRun:
    """Birkhoff averages A_n = (1/n) sum_{k<n} obs(f^k x) for each point.

    `averages[i, n-1]` is A_n along the i-th start point;
    `max_pairwise_deviation[n-1]` is max_{i,j} |A_n(x_i) - A_n(x_j)|, a
    uniformity diagnostic (identically zero for fewer than two points).
    """

    observable: str
    horizon: int
    num_points: int
    averages: np.ndarray
    max_pairwise_deviation: np.ndarray


def birkhoff_averages(dmap: DynamicsMap, start_points, horizon: int,
                      observable: str,
                      tolerances: Tolerances = TOLERANCES) -> BirkhoffRun:
    """Running averages of a named observable along each orbit.

    The per-orbit averages are cumulative sums in orbit order, so exact
    cancellations (for example a sign-flipped observable summed over an
    even number of steps) survive in floating point.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    try:
        func = OBSERVABLES[observable]
    except KeyError:
        raise ValueError(
            f"unknown observable {observable!r}; known: {sorted(OBSERVABLES)}"
        ) from None
    start_points = tuple(start_points)
    if not start_points:
        raise ValueError("need at least one start point")
    denom = np.arange(1, horizon + 1, dtype=np.float64)
    rows = []
    for p in start_points:
        vals = np.fromiter(
            (func(q) for q in orbit(dmap, p, horizon, tolerances)),
            dtype=np.complex128, count=horizon,
        )
        sums = np.cumsum(vals)
        # divide componentwise; complex/real division in numpy goes through
        # a reciprocal and loses the exactness of n/n and 0/n
        rows.append(sums.real / denom + 1j * (sums.imag / denom))
    averages = np.array(rows)
    dev = np.zeros(horizon)
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            np.maximum(dev, np.abs(rows[i] - rows[j]), out=dev)
    return BirkhoffRun(
        observable=observable,
        horizon=horizon,
        num_points=len(start_points),
        averages=averages,
        max_pairwise_deviation=dev,
    )


def write_birkhoff_csv(run: BirkhoffRun, path) -> None:
    """Long-format CSV: one row per (n, start point)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "point", "avg_real", "avg_imag", "max_deviation"])
        for i in range(run.num_points):
            row_avg = run.averages[i]
            for n in range(1, run.horizon + 1):
                a = row_avg[n - 1]
                writer.writerow([
                    n, i, f"{a.real:.17g}", f"{a.imag:.17g}",
                    f"{run.max_pairwise_deviation[n - 1]:.17g}",
                ])


def birkhoff_summary(run: BirkhoffRun) -> dict:
    """JSON-ready digest of a run (final averages, worst deviation)."""
    finals = run.averages[:, -1]
    return {
        "observable": run.observable,
        "horizon": run.horizon,
        "num_points": run.num_points,
        "final_averages": [[float(a.real), float(a.imag)] for a in finals],
        "final_max_abs_average": float(np.max(np.abs(finals))),
        "max_pairwise_deviation": float(np.max(run.max_pairwise_deviation)),
    }


# ---------------------------------------------------------------------------
# mapping degree

def _rotation_matrix_s3(angle: float) -> np.ndarray:
    """The S^3 rotation as a real orthogonal map of R^4 = C^2."""
    c = math.cos(2.0 * math.pi * angle)
    s = math.sin(2.0 * math.pi * angle)
    block = np.array([[c, -s], [s, c]])
    out = np.zeros((4, 4))
    out[:2, :2] = block
    out[2:, 2:] = block
    return out


def _factor_matrix(dmap: DynamicsMap, factor: str) -> np.ndarray:
    if factor == "s3":
        return _rotation_matrix_s3(dmap.angle)
    if factor == "s6":
        return -np.eye(S6_AMBIENT) if dmap.flip_s6 else np.eye(S6_AMBIENT)
    if factor == "s8":
        return -np.eye(S8_AMBIENT) if dmap.flip_s8 else np.eye(S8_AMBIENT)
    raise ValueError(f"unknown factor {factor!r}; expected one of {FACTOR_NAMES}")


def _orientation_signs(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Orientation sign of the map at each unit row of x.

    A sign-stabilized Householder reflection (v = x + s e_0, s = sign(x_0))
    supplies an orthonormal tangent frame at x; |v|^2 = 2(1 + |x_0|) >= 2,
    so the construction never degenerates. The reflection has determinant
    -1 and first column -s x, hence det[x | frame] = s, and the orientation
    sign is sign det[f(x) | df(frame)] * s.
    """
    n, m = x.shape
    s = np.where(x[:, 0] >= 0.0, 1.0, -1.0)
    v = x.copy()
    v[:, 0] += s
    vnorm2 = np.einsum("ij,ij->i", v, v)
    q = (-2.0 / vnorm2)[:, None, None] * v[:, :, None] * v[:, None, :]
    idx = np.arange(m)
    q[:, idx, idx] += 1.0
    tangent = q[:, :, 1:]
    y = x @ a.T
    w = np.einsum("ij,njk->nik", a, tangent)
    frames = np.concatenate([y[:, :, None], w], axis=2)
    det = np.linalg.det(frames)
    if np.any(np.abs(det) < 1e-9):
        raise DegreeEstimateError("degenerate frame determinant; map is not a local diffeo at a sample")
    return np.sign(det) * s


@dataclass(frozen=True)
class DegreeEstimate:
    """Monte Carlo mapping degree of one factor map.

    For the (bijective) factor maps handled here the orientation sign is
    constant on the sphere, so `raw_mean` estimates the degree itself and
    `degree` is its nearest integer; the normal-approximation interval is
    [ci_low, ci_high].
    """

    factor: str
    samples: int
    seed: int
    raw_mean: float
    std_error: float
    ci_low: float
    ci_high: float
    degree: int


DEGREE_CHUNK = 1 << 14


def estimate_degree(dmap: DynamicsMap, factor: str, samples: int = 100_000,
                    seed: int = 0, chunk: int = DEGREE_CHUNK,
                    tolerances: Tolerances = TOLERANCES) -> DegreeEstimate:
    """Estimate the mapping degree of one factor map by sampled orientation.

    Samples are uniform on the factor sphere. Each chunk draws from its own
    Philox stream keyed by (seed, chunk index) and partial sums are reduced
    in chunk order, so the estimate depends only on (seed, samples), not on
    the chunk size actually used to batch the work.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if chunk < 1:
        raise ValueError("chunk must be >= 1")
    a = _factor_matrix(dmap, factor)
    m = a.shape[0]
    total = 0.0
    done = 0
    index = 0
    while done < samples:
        size = min(chunk, samples - done)
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
        )
        x = rng.standard_normal((size, m))
        norms = np.linalg.norm(x, axis=1)
        if np.any(norms < 1e-12):
            raise DegreeEstimateError("degenerate Gaussian sample")
        x /= norms[:, None]
        total += float(_orientation_signs(a, x).sum())
        done += size
        index += 1
    mean = total / samples
    var = max(0.0, 1.0 - mean * mean)  # signs are +-1
    se = math.sqrt(var / samples)
    nearest = round(mean)
    if abs(mean - nearest) > tolerances.degree_reject:
        raise DegreeEstimateError(
            f"raw mean {mean:.6f} is more than {tolerances.degree_reject} "
            f"from any integer; refusing to report a degree"
        )
    return DegreeEstimate(
        factor=factor, samples=samples, seed=seed, raw_mean=mean,
        std_error=se, ci_low=mean - 1.96 * se, ci_high=mean + 1.96 * se,
        degree=int(nearest),
    )


# ---------------------------------------------------------------------------
# orbit density

@dataclass(frozen=True)
class DensityResult:
    """Coverage of the predicted orbit closure by a finite orbit.

    The closure of the orbit of a point with a2, a3 both nonzero is a
    circle's worth of rotation parameters on one or two sheets (two when
    any flip is present, since even iterates and odd iterates land on
    opposite signs). `coverage` is the fraction of an epsilon-grid on
    [0, 1) x sheets that lies within epsilon (circular distance) of an
    orbit parameter; `max_gap` is the largest circular gap between
    consecutive orbit parameters on any sheet.
    """

    horizon: int
    epsilon: float
    sheets: int
    grid_size: int
    coverage: float
    max_gap: float


def _require_irrational(angle: float, horizon: int,
                        tolerances: Tolerances) -> None:
    # Denominators past ~1e4 cannot be told apart from irrationals at double
    # precision, so the guard saturates there.
    guard = max(100, min(horizon, 10_000))
    exact = Fraction(angle)
    approx = exact.limit_denominator(guard)
    if abs(approx - exact) < Fraction(tolerances.rational_angle):
        raise ValueError(
            f"angle {angle!r} is within {tolerances.rational_angle:.0e} of "
            f"{approx.numerator}/{approx.denominator}; orbit closures of "
            f"rational rotations are finite and the density check would be "
            f"meaningless"
        )


def orbit_density_check(dmap: DynamicsMap, start: ProductPoint, horizon: int,
                        epsilon: float,
                        tolerances: Tolerances = TOLERANCES) -> DensityResult:
    """Check how densely {f^k x : 0 <= k < horizon} fills its closure.

    The orbit is iterated honestly (same arithmetic as `orbit`) and each
    point is projected to its rotation parameter through the inner product
    <z_k, z_0> = e^(2 pi i k t) on the S^3 factor, plus the flip parity for
    the sheet. Requires an irrational angle and a2, a3 not both on the
    degenerate circle.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must be in (0, 0.5)")
    _require_irrational(dmap.angle, horizon, tolerances)
    _require_unit(start, tolerances)

    z0 = np.array(start.s3, dtype=np.complex128)
    sheets = 2 if (dmap.flip_s6 or dmap.flip_s8) else 1
    params = [[] for _ in range(sheets)]
    z = z0.copy()
    phase = dmap.phase
    for k in range(horizon):
        inner = complex(np.vdot(z0, z))  # = e^(2 pi i k t) for unit z0
        theta = (math.atan2(inner.imag, inner.real) / (2.0 * math.pi)) % 1.0
        params[k % sheets].append(theta)
        z = z * phase
        norm = float(np.linalg.norm(z))
        if abs(norm - 1.0) > tolerances.renorm_trigger:
            z = z / norm

    grid_size = math.ceil(1.0 / epsilon)
    grid = np.arange(grid_size, dtype=np.float64) / grid_size
    covered = 0
    max_gap = 0.0
    for sheet in params:
        if not sheet:
            max_gap = 1.0
            continue
        p = np.sort(np.asarray(sheet))
        gaps = np.diff(p)
        wrap = 1.0 - p[-1] + p[0]
        max_gap = max(max_gap, float(np.max(gaps)) if gaps.size else wrap, wrap)
        ext = np.concatenate([[p[-1] - 1.0], p, [p[0] + 1.0]])
        pos = np.searchsorted(ext, grid)
        dist = np.minimum(np.abs(grid - ext[pos - 1]), np.abs(ext[pos] - grid))
        covered += int(np.count_nonzero(dist <= epsilon))
    return DensityResult(
        horizon=horizon,
        epsilon=epsilon,
        sheets=sheets,
        grid_size=grid_size,
        coverage=covered / (grid_size * sheets),
        max_gap=max_gap,
    )
