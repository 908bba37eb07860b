"""Structured result documents with deterministic rendering.

Every command produces one JSON-serializable document:

    {
      "schema_version": "1",
      "tool": {"name": "spherecross", "version": ...},
      "command": "compare",
      "inputs": {"source": "input", ...},
      "results": {"source": "computed", ...},
      "fixture_comparisons": [...],    # only when a fixture matches the input
      "discrepancy_notes": [...],      # only when fixture rows mismatch
      "assumptions": [...]
    }

Rendering rules:

* `to_json` sorts keys and carries no timestamps, hostnames, or paths that
  were not given as inputs, so equal invocations give byte-equal output;
* every numeric leaf must sit inside a subtree tagged with a "source" of
  input, computed, or published; `validate_document` enforces this, and the
  command layer refuses to emit documents that fail it.
"""

from __future__ import annotations

import json

TOOL_NAME = "spherecross"
TOOL_VERSION = "0.1.0"
SCHEMA_VERSION = "1"
SOURCE_TAGS = ("input", "computed", "published")


class ReportFormatError(RuntimeError):
    """A document violates the schema or the source-tagging discipline."""


def new_document(command: str, inputs: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "command": command,
        "inputs": {"source": "input", **inputs},
    }


def group_dict(group) -> dict:
    """AbelianGroup as a JSON-friendly mapping."""
    return {
        "free_rank": group.free_rank,
        "torsion": list(group.torsion),
        "display": str(group),
    }


def pairs_list(pairs) -> list:
    """(degree, dim) tuples as sorted [degree, dim] lists."""
    return [[int(d), int(v)] for d, v in sorted(pairs)]


def fixture_rows_list(rows) -> list:
    return [
        {
            "quantity": row.quantity,
            "computed": row.computed,
            "published": row.published,
            "match": row.match,
            "note": row.note,
        }
        for row in rows
    ]


def _walk(value, tagged: bool, path: str) -> None:
    if isinstance(value, dict):
        if "source" in value:
            src = value["source"]
            if src not in SOURCE_TAGS:
                raise ReportFormatError(f"{path}: unknown source tag {src!r}")
            tagged = True
        for key, item in value.items():
            _walk(item, tagged, f"{path}.{key}")
    elif isinstance(value, list):
        for i, item in enumerate(value):
            _walk(item, tagged, f"{path}[{i}]")
    elif isinstance(value, bool) or value is None or isinstance(value, str):
        return
    elif isinstance(value, (int, float)):
        if not tagged:
            raise ReportFormatError(
                f"{path}: numeric value {value!r} has no source tag above it"
            )
    else:
        raise ReportFormatError(f"{path}: {type(value).__name__} is not JSON-safe")


def validate_document(doc: dict) -> None:
    if not isinstance(doc, dict):
        raise ReportFormatError("document must be a dict")
    for key in ("schema_version", "tool", "command", "inputs"):
        if key not in doc:
            raise ReportFormatError(f"missing required key {key!r}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ReportFormatError(f"unsupported schema version {doc['schema_version']!r}")
    if not isinstance(doc["command"], str):
        raise ReportFormatError("command must be a string")
    _walk(doc, False, "$")


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# plain-text rendering

def render_fixture_diff(doc: dict) -> str:
    """Computed-vs-published table, empty string when no fixture applied."""
    rows = doc.get("fixture_comparisons", [])
    if not rows:
        return ""
    headers = ("quantity", "computed", "published", "")
    table = [
        (r["quantity"], r["computed"], r["published"], "ok" if r["match"] else "MISMATCH")
        for r in rows
    ]
    widths = [max(len(headers[i]), *(len(t[i]) for t in table)) for i in range(4)]
    lines = ["reference comparison (published values for this instance):"]
    lines.append("  " + "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip())
    for t in table:
        lines.append("  " + "  ".join(t[i].ljust(widths[i]) for i in range(4)).rstrip())
    notes = doc.get("discrepancy_notes", [])
    if notes:
        lines.append("known discrepancies:")
        lines.extend(f"  - {n}" for n in notes)
    return "\n".join(lines)


def _render_group(gd: dict) -> str:
    return gd["display"]


def _render_ktheory(results: dict) -> list:
    lines = [
        f"K_0(crossed product) = {_render_group(results['k0'])}",
        f"  cokernel part {_render_group(results['k0_parts']['cokernel'])}"
        f" + kernel part {_render_group(results['k0_parts']['kernel'])}",
        f"K_1(crossed product) = {_render_group(results['k1'])}",
        f"  cokernel part {_render_group(results['k1_parts']['cokernel'])}"
        f" + kernel part {_render_group(results['k1_parts']['kernel'])}",
        f"K^0(space) = {_render_group(results['space']['k0'])},"
        f" K^1(space) = {_render_group(results['space']['k1'])}",
    ]
    return lines

def _render_hp(results: dict) -> list:
    return [
        f"dim HP^even(smooth crossed product) = {results['even_dim']}",
        f"dim HP^odd(smooth crossed product)  = {results['odd_dim']}",
        f"algebra HP dims (even, odd) = ({results['algebra_even_dim']},"
        f" {results['algebra_odd_dim']})",
        f"six-term dimension slots = {results['six_term_dims']}",
    ]


def _render_grading(results: dict) -> list:
    return [
        f"model: {results['model_tag']}",
        f"eq dims (degree, dim): {results['eq_dims']}",
        f"coeq dims (degree, dim): {results['coeq_dims']}",
        f"graded output (degree, dim): {results['e_dims']}",
        f"odd-degree support: {results['odd_support']}",
        f"even-degree support (model-dependent): {results['even_support']}",
        f"total dim: {results['total_dim']}",
    ]


def _render_compare(results: dict) -> list:
    lines = [
        f"C*-level verdict: {results['cstar_verdict']}",
        f"  {results['cstar_detail']}",
        f"smooth-level verdict: {results['smooth_verdict']}",
        f"  {results['smooth_detail']}",
    ]
    for label in ("first", "second"):
        side = results[label]
        lines.append(
            f"{label}: K_0 = {_render_group(side['k_theory']['k0'])}, "
            f"K_1 = {_render_group(side['k_theory']['k1'])}, "
            f"HP = ({side['hp']['even_dim']}, {side['hp']['odd_dim']}), "
            f"odd support = {side['grading']['odd_support']}"
        )
    return lines


def _render_simulate(results: dict) -> list:
    lines = []
    birkhoff = results.get("birkhoff")
    if birkhoff:
        lines.append(
            f"birkhoff[{birkhoff['observable']}]: horizon {birkhoff['horizon']}, "
            f"{birkhoff['num_points']} point(s), "
            f"final max |A_n| = {birkhoff['final_max_abs_average']:.3e}, "
            f"max pairwise deviation = {birkhoff['max_pairwise_deviation']:.3e}"
        )
    for est in results.get("degrees", []):
        lines.append(
            f"degree[{est['factor']}] = {est['degree']} "
            f"(raw mean {est['raw_mean']:.6f}, "
            f"ci [{est['ci_low']:.6f}, {est['ci_high']:.6f}], "
            f"{est['samples']} samples, seed {est['seed']})"
        )
    density = results.get("density")
    if density:
        lines.append(
            f"density: coverage {density['coverage']:.4f} of the "
            f"{density['grid_size']}-point grid on {density['sheets']} sheet(s) "
            f"at eps {density['epsilon']}, max gap {density['max_gap']:.3e}"
        )
    if "csv_path" in results:
        lines.append(f"averages written to {results['csv_path']}")
    return lines


_RENDERERS = {
    "ktheory": _render_ktheory,
    "hp": _render_hp,
    "grading": _render_grading,
    "compare": _render_compare,
    "simulate": _render_simulate,
}


def render_text(doc: dict) -> str:
    command = doc["command"]
    inputs = doc["inputs"]
    lines = [f"{TOOL_NAME} {command}"]
    described = []
    if "manifold" in inputs:
        described.append("manifold S^" + " x S^".join(str(n) for n in inputs["manifold"]))
    for key in ("diffeo", "first", "second"):
        if key in inputs:
            d = inputs[key]
            described.append(f"{key} {d['label'] or 'map'}({', '.join(d['per_factor'])})")
    if described:
        lines.append("  " + "; ".join(described))
    renderer = _RENDERERS.get(command)
    if renderer is None:
        raise ReportFormatError(f"no renderer for command {command!r}")
    lines.extend(renderer(doc["results"]))
    for key in ("assumptions",):
        if doc.get(key):
            lines.append("assumptions:")
            lines.extend(f"  - {a}" for a in doc[key])
    diff = render_fixture_diff(doc)
    if diff:
        lines.append(diff)
    return "\n".join(lines) + "\n"
