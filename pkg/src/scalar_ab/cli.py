"""Command-line front end.

    scalar-ab --config run.json [--output PATH] [--quiet]

The config is a JSON document::

    {
      "command": "sidebands",
      "drive": {"v0": 2.0, "omega": 1.0, "units": "natural"},
      "levels": [{"label": "g", "energy": 0.0, "coupling": 1.0}],
      "params": {},
      "output": {"format": "csv", "path": null}
    }

Exit codes: 0 success, 2 config error, 3 numerical-contract failure,
4 I/O error. Failures also write one JSON error record to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from . import acstark, constants, eit, floquet, spectra, tdse
from .errors import InvalidInputError

COMMANDS = ("sidebands", "splitting", "tdse-verify", "acstark", "gauge-check", "spectrum", "eit", "constants")
FORMATS = ("csv", "json")
NEEDS_DRIVE = {"sidebands", "splitting", "tdse-verify", "gauge-check", "spectrum"}

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONTRACT = 3
EXIT_IO = 4

PARAM_DEFAULTS: dict[str, dict[str, Any]] = {
    "sidebands": {"n_hi": None, "min_weight": 0.0},
    "splitting": {},
    "tdse-verify": {"periods": 10, "samples_per_period": None, "substeps": None, "tolerance": 1e-8},
    "gauge-check": {"periods": 10, "samples_per_period": None, "substeps": None, "tolerance": 1e-8},
    "acstark": {"e0": None, "d": None, "beta": 0.0, "omega": None, "n_min": -10, "n_max": 10, "s_hi": None},
    "spectrum": {"ground": None, "excited": None, "width": None, "points": 2001, "start": None,
                 "stop": None, "n_hi": None},
    "eit": {"delta_c": 0.0, "rabi_p": None, "rabi_c": None, "gamma_3": None, "gamma_2": 0.0,
            "points": 4001, "span": 10.0, "sideband_offset": None},
    "constants": {},
}
REQUIRED_PARAMS = {
    "acstark": ("e0", "d", "omega"),
    "spectrum": ("width",),
    "eit": ("rabi_p", "rabi_c", "gamma_3"),
}


class ConfigError(Exception):
    """Config text that does not parse or does not validate."""

    def __init__(self, message: str, field: str | None = None,
                 line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.field = field
        self.line = line
        self.column = column

    def record(self) -> dict:
        rec = {"error": "config", "message": str(self)}
        if self.field is not None:
            rec["field"] = self.field
        if self.line is not None:
            rec["line"], rec["column"] = self.line, self.column
        return rec


@dataclass(frozen=True)
class DriveConfig:
    v0: float
    omega: float
    units: str = constants.NATURAL


@dataclass(frozen=True)
class LevelConfig:
    label: str
    energy: float = 0.0
    coupling: float = 1.0


@dataclass(frozen=True)
class OutputConfig:
    format: str = "csv"
    path: str | None = None


@dataclass(frozen=True)
class RunConfig:
    command: str
    drive: DriveConfig | None = None
    levels: tuple[LevelConfig, ...] = ()
    params: dict = field(default_factory=dict)
    output: OutputConfig = field(default_factory=OutputConfig)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["levels"] = [asdict(lv) for lv in self.levels]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def make_drive(self) -> floquet.DriveParams:
        return floquet.make_drive(self.drive.v0, self.drive.omega, self.drive.units)

    def make_scheme(self) -> floquet.LevelScheme:
        return floquet.LevelScheme(tuple(floquet.Level(lv.label, lv.energy, lv.coupling) for lv in self.levels))


def _number(value, name: str, *, positive=False, nonneg=False, integer=False, optional=False):
    if value is None:
        if optional:
            return None
        raise ConfigError(f"{name} is required", field=name)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}", field=name)
    if integer:
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{name} must be an integer, got {value!r}", field=name)
        value = int(value)
    else:
        value = float(value)
        if not math.isfinite(value):
            raise ConfigError(f"{name} must be finite", field=name)
    if positive and not value > 0:
        raise ConfigError(f"{name} must be > 0, got {value!r}", field=name)
    if nonneg and not value >= 0:
        raise ConfigError(f"{name} must be >= 0, got {value!r}", field=name)
    return value


def _parse_drive(doc: dict) -> DriveConfig | None:
    raw = doc.get("drive")
    if raw is None and any(k in doc for k in ("v0", "omega")):
        raw = {k: doc[k] for k in ("v0", "omega", "units") if k in doc}
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ConfigError("drive must be an object", field="drive")
    unknown = set(raw) - {"v0", "omega", "units"}
    if unknown:
        raise ConfigError(f"unknown drive keys {sorted(unknown)}", field="drive")
    units = raw.get("units", constants.NATURAL)
    if units not in constants.UNIT_SYSTEMS:
        raise ConfigError(f"units must be one of {constants.UNIT_SYSTEMS}, got {units!r}", field="drive.units")
    return DriveConfig(
        v0=_number(raw.get("v0"), "drive.v0", nonneg=True),
        omega=_number(raw.get("omega"), "drive.omega", positive=True),
        units=units,
    )


def _parse_levels(doc: dict, drive: DriveConfig | None) -> tuple[LevelConfig, ...]:
    raw = doc.get("levels")
    if raw is None:
        return (LevelConfig("0"),) if drive is not None else ()
    if not isinstance(raw, list):
        raise ConfigError("levels must be a list", field="levels")
    out = []
    for i, item in enumerate(raw):
        name = f"levels[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(f"{name} must be an object", field=name)
        unknown = set(item) - {"label", "energy", "coupling", "units"}
        if unknown:
            raise ConfigError(f"unknown keys {sorted(unknown)}", field=name)
        if "units" in item and drive is not None and item["units"] != drive.units:
            raise ConfigError(f"{name}.units {item['units']!r} disagrees with drive.units {drive.units!r}",
                              field=f"{name}.units")
        label = item.get("label", str(i))
        if not isinstance(label, str):
            raise ConfigError(f"{name}.label must be a string", field=f"{name}.label")
        out.append(LevelConfig(
            label=label,
            energy=_number(item.get("energy", 0.0), f"{name}.energy"),
            coupling=_number(item.get("coupling", 1.0), f"{name}.coupling"),
        ))
    labels = [lv.label for lv in out]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"level labels must be unique, got {labels}", field="levels")
    return tuple(out)


def _check_params(command: str, params: dict, levels) -> None:
    ints = {"n_hi", "periods", "samples_per_period", "substeps", "n_min", "n_max", "s_hi", "points"}
    for key, value in params.items():
        name = f"params.{key}"
        if key in ("ground", "excited"):
            if value is not None and value not in [lv.label for lv in levels]:
                raise ConfigError(f"{name} {value!r} is not a level label", field=name)
            continue
        positive = key in ("periods", "samples_per_period", "substeps", "tolerance", "omega", "width",
                           "points", "span", "rabi_p", "gamma_3")
        nonneg = key in ("n_hi", "s_hi", "min_weight", "rabi_c", "gamma_2")
        _number(value, name, integer=key in ints, positive=positive, nonneg=nonneg,
                optional=key not in REQUIRED_PARAMS.get(command, ()))
    if command == "spectrum" and len(levels) < 2:
        raise ConfigError("spectrum needs at least two levels", field="levels")
    if command == "acstark" and params["n_min"] > params["n_max"]:
        raise ConfigError("n_min must not exceed n_max", field="params.n_min")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration, filling in defaults."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    command = doc.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"command must be one of {COMMANDS}, got {command!r}", field="command")
    drive = _parse_drive(doc)
    if command in NEEDS_DRIVE and drive is None:
        raise ConfigError(f"{command} needs a drive", field="drive")
    levels = _parse_levels(doc, drive)

    raw_params = doc.get("params", {}) or {}
    if not isinstance(raw_params, dict):
        raise ConfigError("params must be an object", field="params")
    defaults = PARAM_DEFAULTS[command]
    unknown = set(raw_params) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown params for {command}: {sorted(unknown)}", field="params")
    params = {**defaults, **raw_params}
    _check_params(command, params, levels)

    raw_out = doc.get("output", {}) or {}
    if not isinstance(raw_out, dict):
        raise ConfigError("output must be an object", field="output")
    fmt = raw_out.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"output.format must be one of {FORMATS}, got {fmt!r}", field="output.format")
    path = raw_out.get("path")
    if path is not None and not isinstance(path, str):
        raise ConfigError("output.path must be a string or null", field="output.path")
    return RunConfig(command=command, drive=drive, levels=levels, params=params,
                     output=OutputConfig(format=fmt, path=path))


class ContractFailure(Exception):
    """A verification command measured an error above its tolerance."""


# -- command implementations -------------------------------------------------
# Each returns (columns, rows, extra) where extra is merged into JSON output.

def _cmd_sidebands(cfg: RunConfig):
    spec = floquet.sideband_spectrum(cfg.make_scheme(), cfg.make_drive(), cfg.params["n_hi"])
    floor = cfg.params["min_weight"]
    rows = []
    for ls in spec.levels:
        keep = ls.weight > floor
        for n, e, a, w in zip(ls.n[keep], ls.energy[keep], ls.amplitude[keep], ls.weight[keep]):
            rows.append([ls.level.label, int(n), float(e), float(a), float(w)])
    extra = {"alpha_per_level": list(spec.alpha_per_level), "truncation": spec.truncation}
    return ["level_label", "n", "energy", "amplitude", "weight"], rows, extra


def _cmd_splitting(cfg: RunConfig):
    drive = cfg.make_drive()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        split = floquet.dominant_splitting(cfg.make_scheme(), drive)
    rows = [[ls.label, ls.lower, ls.upper, ls.n_max, split.shift_frequency(i), split.exact_shift_frequency(i)]
            for i, ls in enumerate(split.levels)]
    extra = {"alpha": drive.alpha, "small_alpha": split.small_alpha}
    return ["level_label", "lower", "upper", "n_max", "shift_frequency", "exact_shift_frequency"], rows, extra


def _verify_grid(cfg: RunConfig, scheme, drive) -> tdse.TimeGrid:
    spp = cfg.params["samples_per_period"]
    if spp is None:
        spp = max(50, math.ceil(drive.period / tdse.required_spacing(scheme, drive) * (1 + 1e-9)))
    return tdse.TimeGrid.periods(drive, cfg.params["periods"], spp)


def _report(drive, periods, max_error, tol):
    return {"alpha": drive.alpha, "periods": periods, "max_error": max_error,
            "tolerance": tol, "pass": bool(max_error < tol)}


def _cmd_tdse_verify(cfg: RunConfig):
    scheme, drive = cfg.make_scheme(), cfg.make_drive()
    grid = _verify_grid(cfg, scheme, drive)
    series = tdse.integrate(scheme, drive, grid, cfg.params["substeps"])
    err = 0.0
    for i, lv in enumerate(scheme):
        exact = floquet.analytic_phase_factor(drive, lv.energy, grid.times, lv.coupling)
        err = max(err, float(np.max(np.abs(series.amplitudes[i] - exact))))
    return _report(drive, cfg.params["periods"], err, cfg.params["tolerance"])


def _cmd_gauge_check(cfg: RunConfig):
    scheme, drive = cfg.make_scheme(), cfg.make_drive()
    grid = _verify_grid(cfg, scheme, drive)
    series = tdse.integrate(scheme, drive, grid, cfg.params["substeps"])
    moved = tdse.gauge_transform(series, drive, scheme)
    err = float(np.max(np.abs(moved.amplitudes - tdse.free_evolution(scheme, drive, grid))))
    return _report(drive, cfg.params["periods"], err, cfg.params["tolerance"])


def _cmd_acstark(cfg: RunConfig):
    p = cfg.params
    params = acstark.ACStarkParams(e0=p["e0"], d=p["d"], beta=p["beta"], omega=p["omega"])
    n = list(range(p["n_min"], p["n_max"] + 1))
    c = acstark.c_n_table(params, n, p["s_hi"])
    ref = acstark.scalar_weights(params, n)
    rows = [[k, float(ck), float(rk)] for k, ck, rk in zip(n, c, ref)]
    extra = {"quadratic_depth": params.quadratic_depth, "linear_depth": params.linear_depth}
    if params.beta == 0:
        extra["reduction_residual"] = acstark.reduction_residual(params, n)
    return ["n", "c_n", "scalar_ab_weight"], rows, extra


def _cmd_spectrum(cfg: RunConfig):
    p = cfg.params
    scheme, drive = cfg.make_scheme(), cfg.make_drive()
    spec = floquet.sideband_spectrum(scheme, drive, p["n_hi"])
    ground = spec.level(p["ground"] if p["ground"] is not None else 0)
    excited = spec.level(p["excited"] if p["excited"] is not None else 1)
    lines = spectra.transition_lines(ground, excited, p["width"], hbar=drive.hbar)
    if p["start"] is not None and p["stop"] is not None:
        grid = np.linspace(p["start"], p["stop"], p["points"])
    else:
        grid = spectra.auto_grid(lines, p["points"])
    curve = spectra.lorentzian_profile(lines, grid)
    rows = [[float(f), float(a)] for f, a in zip(curve.frequency, curve.absorption)]
    extra = {"lines": len(lines), "total_strength": lines.total_strength}
    return ["frequency", "absorption"], rows, extra


def _cmd_eit(cfg: RunConfig):
    p = cfg.params
    offset = p["sideband_offset"]
    if offset is None:
        offset = floquet.image_offset(cfg.make_drive()) if cfg.drive is not None else 0.0
    sys_ = eit.LambdaSystem(delta_p=0.0, delta_c=p["delta_c"], rabi_p=p["rabi_p"], rabi_c=p["rabi_c"],
                            gamma_3=p["gamma_3"], gamma_2=p["gamma_2"], sideband_offset=offset)
    curve = eit.transparency_scan(sys_, eit.scan_grid(sys_, p["points"], p["span"]))
    dip = eit.dip_metric(curve)
    rows = [[float(f), float(a)] for f, a in zip(curve.frequency, curve.absorption)]
    extra = {"sideband_offset": offset, "dip_present": dip.present,
             "dip_center": dip.center if dip.present else None, "dip_depth_fraction": dip.depth_fraction}
    return ["frequency", "absorption"], rows, extra


def _cmd_constants(cfg: RunConfig):
    return ["name", "value", "unit"], [list(row) for row in constants.TABLE], {}


_TABLE_COMMANDS = {
    "sidebands": _cmd_sidebands,
    "splitting": _cmd_splitting,
    "acstark": _cmd_acstark,
    "spectrum": _cmd_spectrum,
    "eit": _cmd_eit,
    "constants": _cmd_constants,
}
_REPORT_COMMANDS = {
    "tdse-verify": _cmd_tdse_verify,
    "gauge-check": _cmd_gauge_check,
}
_MODULE_OF = {
    "sidebands": "floquet", "splitting": "floquet", "tdse-verify": "tdse", "gauge-check": "tdse",
    "acstark": "acstark", "spectrum": "spectra", "eit": "eit", "constants": "constants",
}


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def render(cfg: RunConfig) -> tuple[str, bool]:
    """Compute a command and format it; returns (text, contract_ok)."""
    if cfg.command in _REPORT_COMMANDS:
        report = _REPORT_COMMANDS[cfg.command](cfg)
        if cfg.output.format == "json":
            text = json.dumps(report, indent=2) + "\n"
        else:
            text = _csv_text(list(report), [list(report.values())])
        return text, report["pass"]
    columns, rows, extra = _TABLE_COMMANDS[cfg.command](cfg)
    if cfg.output.format == "json":
        doc = {"command": cfg.command, **extra, "columns": columns, "rows": rows}
        return json.dumps(doc, indent=2) + "\n", True
    return _csv_text(columns, rows), True


def _emit_error(record: dict) -> None:
    sys.stderr.write(json.dumps(record) + "\n")


def run(cfg: RunConfig, output: str | None = None, quiet: bool = False) -> int:
    """Execute a validated config and write its artifact; returns the exit code."""
    module = _MODULE_OF[cfg.command]
    try:
        text, ok = render(cfg)
    except InvalidInputError as exc:
        _emit_error({"error": "config", "module": module, "message": str(exc)})
        return EXIT_CONFIG
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        _emit_error({"error": "numerical", "module": module, "message": str(exc)})
        return EXIT_CONTRACT
    path = output if output is not None else cfg.output.path
    try:
        if path is None or path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        _emit_error({"error": "io", "module": "cli", "message": str(exc)})
        return EXIT_IO
    if not ok:
        _emit_error({"error": "contract", "module": module,
                     "message": f"{cfg.command} error exceeds tolerance"})
        return EXIT_CONTRACT
    if not quiet and path not in (None, "-"):
        print(f"{cfg.command}: wrote {path}", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="scalar-ab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--output", help="output path (overrides output.path; '-' for stdout)")
    parser.add_argument("--quiet", action="store_true", help="suppress progress messages")
    args = parser.parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _emit_error({"error": "io", "module": "cli", "message": str(exc)})
        return EXIT_IO
    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        _emit_error({**exc.record(), "module": "cli"})
        return EXIT_CONFIG
    return run(cfg, output=args.output, quiet=args.quiet)


if __name__ == "__main__":
    sys.exit(main())
