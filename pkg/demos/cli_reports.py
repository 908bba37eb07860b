"""
Driving the command line and reading its reports
================================================

The `spherecross` entry point wraps the library in five subcommands
(ktheory, hp, grading, compare, simulate) that emit either readable text
or a JSON document whose every number carries a source tag. This demo
drives the CLI in process, shows the document layout, and exercises a
TOML job file.

Run with `python demos/cli_reports.py`.
"""

import json
import pathlib
import tempfile

from spherecross.cli import run_command
from spherecross.report import to_json, validate_document

##############################################################################
# One invocation, two audiences
# -----------------------------
#
# run_command returns (exit_code, document); the text rendering goes to
# stdout. Exit code 0 is success, 2 a usage or input error, 3 an
# internal consistency failure.

code, doc = run_command(["compare", "--a", "alpha", "--b", "beta"])
print("exit code:", code)

##############################################################################
# The JSON document
# -----------------
#
# Every numeric leaf sits below a "source" tag: "input" for echoed
# arguments, "computed" for results, "published" for fixture values.
# validate_document enforces that, and to_json is byte-deterministic
# (sorted keys, no timestamps) so documents can be diffed or kept as
# golden files.

validate_document(doc)
print("schema:", doc["schema_version"], " command:", doc["command"])
print("verdicts:", doc["results"]["cstar_verdict"], "/",
      doc["results"]["smooth_verdict"])

code2, doc2 = run_command(["compare", "--a", "alpha", "--b", "beta"])
print("byte-identical rerun:", to_json(doc) == to_json(doc2))

##############################################################################
# A TOML job file
# ---------------
#
# Config keys fill in whatever the flags leave unset; flags win when
# both are given. Named diffeomorphisms defined in the file are
# available to --a/--b and to the per-command defaults.

job_text = """
manifold = [3, 6, 8]

[diffeos]
double_flip = ["rotation", "antipodal", "antipodal"]

[pv]
diffeo = "double_flip"

[simulate]
angle = 0.41421356237309515
p6 = true
horizon = 256
observable = "s6_first_coord"
points = 2
seed = 7
"""

with tempfile.TemporaryDirectory() as tmp:
    job = pathlib.Path(tmp) / "job.toml"
    job.write_text(job_text)

    code, doc = run_command(["ktheory", "--config", str(job), "--json"])
    print("double_flip K_0:", doc["results"]["k0"]["display"])

    csv_path = pathlib.Path(tmp) / "averages.csv"
    code, doc = run_command(
        ["simulate", "--config", str(job), "--csv", str(csv_path)])
    print("simulate exit:", code, " csv rows:",
          len(csv_path.read_text().splitlines()))
    print("final max |A_n|:",
          doc["results"]["birkhoff"]["final_max_abs_average"])

##############################################################################
# Errors are loud and coded
# -------------------------

code, _ = run_command(["ktheory", "--a", "gamma"])
print("unknown name exit code:", code)

code, _ = run_command(["simulate", "--angle", "0.25", "--density", "0.05",
                       "--horizon", "100"])
print("rational density angle exit code:", code)

##############################################################################
# The same document, pretty-printed
# ---------------------------------

_, doc = run_command(["hp", "--a", "alpha"])
print(json.dumps(doc["results"], indent=2, sort_keys=True))
