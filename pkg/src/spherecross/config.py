"""Declarative job configuration for the command-line interface.

A job file is TOML; every section is optional and command-line flags
override whatever the file says. The full shape:

    manifold = [3, 6, 8]

    [diffeos]
    alpha = ["rotation", "antipodal", "identity"]
    beta  = ["rotation", "identity", "antipodal"]

    [pv]                 # consumed by the `ktheory` command
    diffeo = "alpha"

    [hp]
    diffeo = "alpha"

    [grading]
    diffeo = "beta"

    [compare]
    first = "alpha"
    second = "beta"

    [simulate]
    angle = 0.41421356237309515
    p6 = true
    p8 = false
    horizon = 100000
    observable = "s3_character"
    points = 2
    seed = 7
    csv = "averages.csv"
    degree = true
    density = 0.01

Parsing is strict: unknown keys anywhere and wrongly typed values are
rejected with the offending dotted name. `JobConfig.to_dict` emits exactly
the keys that were set, so parse -> to_dict round-trips losslessly.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib


class ConfigError(ValueError):
    """A job file failed validation; the message names the bad key."""


def _check_str(value, where: str) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"{where}: expected a string, got {type(value).__name__}")
    return value


def _check_bool(value, where: str) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{where}: expected a boolean, got {type(value).__name__}")
    return value


def _check_int(value, where: str, minimum: int | None = None) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {type(value).__name__}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _check_float(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {type(value).__name__}")
    return float(value)


def _check_table(value, where: str, known: tuple) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{where}: expected a table")
    for key in value:
        if key not in known:
            raise ConfigError(f"unknown key {key!r} in [{where}]")
    return value


@dataclass(frozen=True)
class SimulateSettings:
    """Optional [simulate] values; None means the file did not set it."""

    angle: float | None = None
    p6: bool | None = None
    p8: bool | None = None
    horizon: int | None = None
    observable: str | None = None
    points: int | None = None
    seed: int | None = None
    csv: str | None = None
    degree: bool | None = None
    density: float | None = None

    def to_dict(self) -> dict:
        out = {}
        for name in ("angle", "p6", "p8", "horizon", "observable", "points",
                     "seed", "csv", "degree", "density"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


@dataclass(frozen=True)
class JobConfig:
    manifold: tuple | None = None
    diffeos: tuple = ()  # ((name, (tag, ...)), ...) in file order
    pv_diffeo: str | None = None
    hp_diffeo: str | None = None
    grading_diffeo: str | None = None
    compare_first: str | None = None
    compare_second: str | None = None
    simulate: SimulateSettings = SimulateSettings()

    def diffeo_actions(self, name: str) -> tuple | None:
        for key, tags in self.diffeos:
            if key == name:
                return tags
        return None

    def to_dict(self) -> dict:
        out: dict = {}
        if self.manifold is not None:
            out["manifold"] = list(self.manifold)
        if self.diffeos:
            out["diffeos"] = {name: list(tags) for name, tags in self.diffeos}
        for section, value in (("pv", self.pv_diffeo), ("hp", self.hp_diffeo),
                               ("grading", self.grading_diffeo)):
            if value is not None:
                out[section] = {"diffeo": value}
        compare = {}
        if self.compare_first is not None:
            compare["first"] = self.compare_first
        if self.compare_second is not None:
            compare["second"] = self.compare_second
        if compare:
            out["compare"] = compare
        simulate = self.simulate.to_dict()
        if simulate:
            out["simulate"] = simulate
        return out


_TOP_KEYS = ("manifold", "diffeos", "pv", "hp", "grading", "compare", "simulate")
_SIM_KEYS = ("angle", "p6", "p8", "horizon", "observable", "points", "seed",
             "csv", "degree", "density")


def job_config_from_dict(data: dict) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("top level must be a table")
    for key in data:
        if key not in _TOP_KEYS:
            raise ConfigError(f"unknown key {key!r} at top level")

    manifold = None
    if "manifold" in data:
        raw = data["manifold"]
        if not isinstance(raw, list) or not raw:
            raise ConfigError("manifold: expected a non-empty list of integers")
        manifold = tuple(_check_int(x, f"manifold[{i}]", minimum=1)
                         for i, x in enumerate(raw))

    diffeos = []
    if "diffeos" in data:
        table = data["diffeos"]
        if not isinstance(table, dict):
            raise ConfigError("diffeos: expected a table of named action lists")
        for name, tags in table.items():
            if not isinstance(tags, list) or not tags:
                raise ConfigError(f"diffeos.{name}: expected a non-empty list of action tags")
            diffeos.append((name, tuple(
                _check_str(t, f"diffeos.{name}[{i}]") for i, t in enumerate(tags)
            )))

    single = {}
    for section in ("pv", "hp", "grading"):
        if section in data:
            table = _check_table(data[section], section, ("diffeo",))
            if "diffeo" in table:
                single[section] = _check_str(table["diffeo"], f"{section}.diffeo")

    compare_first = compare_second = None
    if "compare" in data:
        table = _check_table(data["compare"], "compare", ("first", "second"))
        if "first" in table:
            compare_first = _check_str(table["first"], "compare.first")
        if "second" in table:
            compare_second = _check_str(table["second"], "compare.second")

    sim = SimulateSettings()
    if "simulate" in data:
        table = _check_table(data["simulate"], "simulate", _SIM_KEYS)
        kwargs = {}
        if "angle" in table:
            kwargs["angle"] = _check_float(table["angle"], "simulate.angle")
        for key in ("p6", "p8", "degree"):
            if key in table:
                kwargs[key] = _check_bool(table[key], f"simulate.{key}")
        if "horizon" in table:
            kwargs["horizon"] = _check_int(table["horizon"], "simulate.horizon", minimum=1)
        if "points" in table:
            kwargs["points"] = _check_int(table["points"], "simulate.points", minimum=1)
        if "seed" in table:
            kwargs["seed"] = _check_int(table["seed"], "simulate.seed", minimum=0)
        if "observable" in table:
            kwargs["observable"] = _check_str(table["observable"], "simulate.observable")
        if "csv" in table:
            kwargs["csv"] = _check_str(table["csv"], "simulate.csv")
        if "density" in table:
            density = _check_float(table["density"], "simulate.density")
            if not 0.0 < density < 0.5:
                raise ConfigError("simulate.density: must be in (0, 0.5)")
            kwargs["density"] = density
        sim = SimulateSettings(**kwargs)

    return JobConfig(
        manifold=manifold,
        diffeos=tuple(diffeos),
        pv_diffeo=single.get("pv"),
        hp_diffeo=single.get("hp"),
        grading_diffeo=single.get("grading"),
        compare_first=compare_first,
        compare_second=compare_second,
        simulate=sim,
    )


def load_job_config(path) -> JobConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    return job_config_from_dict(data)
