"""Command-line interface.

Subcommands:

    ktheory    K_0/K_1 of the C*-crossed product for one diffeomorphism
    hp         HP dimensions of the smooth crossed product
    grading    degree structure of the crossed-product cyclic cohomology
    compare    both of the above for two diffeomorphisms, with verdicts
    simulate   numerical dynamics: Birkhoff averages, degrees, density

Exit codes: 0 on success; 2 for usage, configuration, or input validation
errors; 3 when an internal consistency check fails (a result that must not
be trusted). Every command accepts --config JOB.toml and --json; flags
override config values.

Diffeomorphisms are written either as a comma-separated action list
("rotation,antipodal,identity") or as a name defined in the config's
[diffeos] table; the names alpha and beta are built in for the
S^3 x S^6 x S^8 instance.
"""

from __future__ import annotations

import argparse
import sys

from . import dynamics, fixtures, report
from .config import ConfigError, JobConfig, load_job_config
from .invariants import (
    InternalInvariantError,
    compare_invariants,
    compute_invariants,
)
from .manifold import (
    DescriptorError,
    DiffeoDescriptor,
    SphereProductManifold,
    k_theory_of_space,
)

DEFAULT_MANIFOLD = (3, 6, 8)
DEFAULT_HORIZON = 10_000
DEFAULT_OBSERVABLE = "s3_character"
DEFAULT_POINTS = 2
DEFAULT_SEED = 0
DEFAULT_DEGREE_SAMPLES = 100_000

USAGE_ERROR = 2
INTERNAL_ERROR = 3


class CliError(Exception):
    """Usage or input problem; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    # argparse's own error path calls sys.exit(2); raise instead so
    # run_command stays an ordinary function
    def error(self, message):
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spherecross", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")

    common = _Parser(add_help=False)
    common.add_argument("--manifold", metavar="DIMS",
                        help="factor dimensions, e.g. '3,6,8'")
    common.add_argument("--config", metavar="JOB.toml",
                        help="TOML job file; flags override its values")
    common.add_argument("--json", action="store_true",
                        help="emit the JSON document instead of text")

    p = sub.add_parser("ktheory", parents=[common],
                       help="K-theory of the C*-crossed product")
    p.add_argument("--a", dest="a", metavar="DIFFEO",
                   help="action list or configured name")

    p = sub.add_parser("hp", parents=[common],
                       help="periodic cyclic cohomology dimensions")
    p.add_argument("--a", dest="a", metavar="DIFFEO")

    p = sub.add_parser("grading", parents=[common],
                       help="degree structure of the cyclic cohomology")
    p.add_argument("--a", dest="a", metavar="DIFFEO")

    p = sub.add_parser("compare", parents=[common],
                       help="full invariant comparison of two diffeomorphisms")
    p.add_argument("--a", dest="a", metavar="DIFFEO")
    p.add_argument("--b", dest="b", metavar="DIFFEO")

    p = sub.add_parser("simulate", parents=[common],
                       help="numerical dynamics on S^3 x S^6 x S^8")
    p.add_argument("--angle", type=float, help="rotation angle in turns")
    p.add_argument("--p6", action=argparse.BooleanOptionalAction, default=None,
                   help="compose with the antipodal map on S^6")
    p.add_argument("--p8", action=argparse.BooleanOptionalAction, default=None,
                   help="compose with the antipodal map on S^8")
    p.add_argument("--horizon", type=int, help="orbit length")
    p.add_argument("--observable", help="named observable for Birkhoff averages")
    p.add_argument("--points", type=int, help="number of random start points")
    p.add_argument("--seed", type=int, help="seed for all randomness")
    p.add_argument("--csv", metavar="PATH", help="write running averages as CSV")
    p.add_argument("--degree", action=argparse.BooleanOptionalAction, default=None,
                   help="also estimate the mapping degree of each factor")
    p.add_argument("--density", type=float, metavar="EPS",
                   help="also run the orbit density check at this epsilon")
    return parser


def _load_config(args) -> JobConfig:
    if getattr(args, "config", None):
        return load_job_config(args.config)
    return JobConfig()


def _parse_manifold(args, cfg: JobConfig) -> SphereProductManifold:
    if getattr(args, "manifold", None):
        text = args.manifold
        try:
            dims = tuple(int(part) for part in text.split(",") if part.strip())
        except ValueError:
            raise CliError(f"--manifold: cannot parse {text!r}") from None
        if not dims:
            raise CliError("--manifold: empty dimension list")
    elif cfg.manifold is not None:
        dims = cfg.manifold
    else:
        dims = DEFAULT_MANIFOLD
    try:
        return SphereProductManifold(dims)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _resolve_diffeo(value: str | None, fallback_name: str | None,
                    cfg: JobConfig, flag: str) -> DiffeoDescriptor:
    if value is None:
        value = fallback_name
    if value is None:
        raise CliError(f"no diffeomorphism given; use {flag} or the config file")
    if "," in value:
        return DiffeoDescriptor.parse(value)
    actions = cfg.diffeo_actions(value)
    if actions is not None:
        return DiffeoDescriptor(per_factor=actions, label=value)
    built_in = fixtures.named_descriptor(value)
    if built_in is not None:
        return built_in
    raise CliError(
        f"{flag}: {value!r} is neither an action list nor a configured or "
        f"built-in diffeomorphism name"
    )


def _descriptor_input(desc: DiffeoDescriptor) -> dict:
    return {"label": desc.label, "per_factor": list(desc.per_factor)}


def _invariants_payload(inv) -> dict:
    return {
        "k_theory": {
            "k0": report.group_dict(inv.k_theory.k0),
            "k1": report.group_dict(inv.k_theory.k1),
        },
        "hp": {"even_dim": inv.hp.even_dim, "odd_dim": inv.hp.odd_dim},
        "grading": {
            "odd_support": list(inv.grading.odd_support),
            "e_dims": report.pairs_list(inv.grading.e_dims),
        },
    }


def _attach_fixture(doc: dict, manifold: SphereProductManifold, inv) -> None:
    rows = fixtures.compare_with_published(manifold, inv)
    if rows:
        doc["fixture_comparisons"] = report.fixture_rows_list(rows)
        notes = fixtures.discrepancy_notes(rows)
        if notes:
            doc["discrepancy_notes"] = list(notes)


def _cmd_ktheory(args) -> dict:
    cfg = _load_config(args)
    manifold = _parse_manifold(args, cfg)
    desc = _resolve_diffeo(args.a, cfg.pv_diffeo, cfg, "--a")
    inv = compute_invariants(manifold, desc)
    space = k_theory_of_space(manifold)
    doc = report.new_document("ktheory", {
        "manifold": list(manifold.factor_dims),
        "diffeo": _descriptor_input(desc),
    })
    doc["results"] = {
        "source": "computed",
        "k0": report.group_dict(inv.k_theory.k0),
        "k1": report.group_dict(inv.k_theory.k1),
        "k0_parts": {
            "cokernel": report.group_dict(inv.k_theory.k0_cokernel_part),
            "kernel": report.group_dict(inv.k_theory.k0_kernel_part),
        },
        "k1_parts": {
            "cokernel": report.group_dict(inv.k_theory.k1_cokernel_part),
            "kernel": report.group_dict(inv.k_theory.k1_kernel_part),
        },
        "space": {
            "k0": report.group_dict(space.k0),
            "k1": report.group_dict(space.k1),
        },
    }
    _attach_fixture(doc, manifold, inv)
    return doc


def _cmd_hp(args) -> dict:
    cfg = _load_config(args)
    manifold = _parse_manifold(args, cfg)
    desc = _resolve_diffeo(args.a, cfg.hp_diffeo, cfg, "--a")
    inv = compute_invariants(manifold, desc)
    doc = report.new_document("hp", {
        "manifold": list(manifold.factor_dims),
        "diffeo": _descriptor_input(desc),
    })
    doc["results"] = {
        "source": "computed",
        "even_dim": inv.hp.even_dim,
        "odd_dim": inv.hp.odd_dim,
        "algebra_even_dim": inv.hp.algebra_even_dim,
        "algebra_odd_dim": inv.hp.algebra_odd_dim,
        "six_term_dims": list(inv.hp.six_term_dims),
    }
    _attach_fixture(doc, manifold, inv)
    return doc


def _cmd_grading(args) -> dict:
    cfg = _load_config(args)
    manifold = _parse_manifold(args, cfg)
    desc = _resolve_diffeo(args.a, cfg.grading_diffeo, cfg, "--a")
    inv = compute_invariants(manifold, desc)
    doc = report.new_document("grading", {
        "manifold": list(manifold.factor_dims),
        "diffeo": _descriptor_input(desc),
    })
    doc["results"] = {
        "source": "computed",
        "model_tag": inv.grading.model_tag,
        "eq_dims": report.pairs_list(inv.grading.eq_dims),
        "coeq_dims": report.pairs_list(inv.grading.coeq_dims),
        "e_dims": report.pairs_list(inv.grading.e_dims),
        "odd_support": list(inv.grading.odd_support),
        "even_support": list(inv.grading.even_support),
        "total_dim": inv.grading.total_dim,
    }
    doc["assumptions"] = [
        f"degree structure computed in the {inv.grading.model_tag}; "
        f"even-degree entries are model-dependent"
    ]
    _attach_fixture(doc, manifold, inv)
    return doc


def _cmd_compare(args) -> dict:
    cfg = _load_config(args)
    manifold = _parse_manifold(args, cfg)
    first = _resolve_diffeo(args.a, cfg.compare_first, cfg, "--a")
    second = _resolve_diffeo(args.b, cfg.compare_second, cfg, "--b")
    comp = compare_invariants(manifold, first, second)
    doc = report.new_document("compare", {
        "manifold": list(manifold.factor_dims),
        "first": _descriptor_input(first),
        "second": _descriptor_input(second),
    })
    doc["results"] = {
        "source": "computed",
        "cstar_verdict": comp.cstar_verdict,
        "smooth_verdict": comp.smooth_verdict,
        "cstar_detail": comp.cstar_detail,
        "smooth_detail": comp.smooth_detail,
        "first": _invariants_payload(comp.first),
        "second": _invariants_payload(comp.second),
    }
    doc["assumptions"] = [
        f"smooth verdict uses odd-degree support in the {comp.first.grading.model_tag}"
    ]
    notes = []
    for label, inv in (("first", comp.first), ("second", comp.second)):
        rows = fixtures.compare_with_published(manifold, inv)
        for note in fixtures.discrepancy_notes(rows):
            notes.append(f"{label}: {note}")
    if notes:
        doc["discrepancy_notes"] = notes
    return doc


def _effective(flag_value, config_value, default):
    if flag_value is not None:
        return flag_value
    if config_value is not None:
        return config_value
    return default


def _cmd_simulate(args) -> dict:
    cfg = _load_config(args)
    sim = cfg.simulate
    angle = _effective(args.angle, sim.angle, None)
    if angle is None:
        raise CliError("simulate needs --angle (or simulate.angle in the config)")
    p6 = _effective(args.p6, sim.p6, False)
    p8 = _effective(args.p8, sim.p8, False)
    horizon = _effective(args.horizon, sim.horizon, DEFAULT_HORIZON)
    observable = _effective(args.observable, sim.observable, DEFAULT_OBSERVABLE)
    points = _effective(args.points, sim.points, DEFAULT_POINTS)
    seed = _effective(args.seed, sim.seed, DEFAULT_SEED)
    csv_path = _effective(args.csv, sim.csv, None)
    want_degree = _effective(args.degree, sim.degree, False)
    density_eps = _effective(args.density, sim.density, None)
    if horizon < 1:
        raise CliError("--horizon must be >= 1")
    if points < 1:
        raise CliError("--points must be >= 1")

    dmap = dynamics.DynamicsMap(angle=angle, flip_s6=p6, flip_s8=p8)
    starts = dynamics.random_points(points, seed)
    try:
        run = dynamics.birkhoff_averages(dmap, starts, horizon, observable)
    except ValueError as exc:
        raise CliError(str(exc)) from None

    doc = report.new_document("simulate", {
        "angle": angle,
        "p6": p6,
        "p8": p8,
        "horizon": horizon,
        "observable": observable,
        "points": points,
        "seed": seed,
    })
    results: dict = {
        "source": "computed",
        "birkhoff": dynamics.birkhoff_summary(run),
    }
    if want_degree:
        estimates = []
        for factor in dynamics.FACTOR_NAMES:
            est = dynamics.estimate_degree(
                dmap, factor, samples=DEFAULT_DEGREE_SAMPLES, seed=seed)
            estimates.append({
                "factor": est.factor,
                "samples": est.samples,
                "seed": est.seed,
                "raw_mean": est.raw_mean,
                "std_error": est.std_error,
                "ci_low": est.ci_low,
                "ci_high": est.ci_high,
                "degree": est.degree,
            })
        results["degrees"] = estimates
    if density_eps is not None:
        try:
            density = dynamics.orbit_density_check(
                dmap, starts[0], horizon, density_eps)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        results["density"] = {
            "horizon": density.horizon,
            "epsilon": density.epsilon,
            "sheets": density.sheets,
            "grid_size": density.grid_size,
            "coverage": density.coverage,
            "max_gap": density.max_gap,
        }
    if csv_path:
        dynamics.write_birkhoff_csv(run, csv_path)
        results["csv_path"] = csv_path
    doc["results"] = results
    return doc


_HANDLERS = {
    "ktheory": _cmd_ktheory,
    "hp": _cmd_hp,
    "grading": _cmd_grading,
    "compare": _cmd_compare,
    "simulate": _cmd_simulate,
}


def run_command(argv) -> tuple:
    """Run one invocation; returns (exit_code, document or None).

    Printing goes to stdout (the rendered document) and stderr (errors);
    the document is also returned so tests and callers can inspect it
    without re-parsing output.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR, None
    if args.command is None:
        print("error: a subcommand is required (see --help)", file=sys.stderr)
        return USAGE_ERROR, None
    handler = _HANDLERS[args.command]
    try:
        doc = handler(args)
        report.validate_document(doc)
    except (CliError, ConfigError, DescriptorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR, None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR, None
    except (InternalInvariantError, report.ReportFormatError,
            dynamics.DegreeEstimateError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR, None
    if args.json:
        sys.stdout.write(report.to_json(doc))
    else:
        sys.stdout.write(report.render_text(doc))
    return 0, doc


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    code, _ = run_command(argv)
    return code
