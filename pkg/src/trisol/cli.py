"""Command-line interface: solve, eigen, validate, and oracle subcommands.

Configuration is a plain-text file of `key = value` lines with dotted
section prefixes (for example `descent.grad_tol = 1e-8`); unknown keys are
rejected.  Reports are written as JSON, fields as CSV with boundary rows
included and 17 significant digits so values round-trip exactly.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import SolveReport
from .descent import DescentOptions
from .grid import DomainSpec, Field
from .mountainpass import MPOptions, PathCollapseError
from .nonlinearity import Nonlinearity, validate_condition_g
from .oracle import find_branch, sign_change_brackets, sweep
from .pipeline import run_pipeline
from .presets import PRESET_NAMES, cubic_nonlinearity
from .spectrum import eigenpairs


class ConfigError(ValueError):
    """Bad configuration file or flags (exit code 2)."""


_SCHEMA: dict[str, type] = {
    "preset": str,
    "domain.kind": str,
    "domain.length": float,
    "domain.width": float,
    "domain.height": float,
    "grid.n": int,
    "grid.nx": int,
    "grid.ny": int,
    "nonlinearity.name": str,
    "nonlinearity.lambda": float,
    "nonlinearity.delta": float,
    "descent.max_iters": int,
    "descent.grad_tol": float,
    "descent.armijo_c": float,
    "descent.backtrack_factor": float,
    "descent.initial_step": float,
    "mountainpass.path_count": int,
    "mountainpass.max_iters": int,
    "mountainpass.grad_tol": float,
    "mountainpass.perturbation": float,
    "mountainpass.collapse_tol": float,
    "mountainpass.restart_limit": int,
    "poisson.tol": float,
    "morse.num_eigs": int,
    "morse.tol": float,
    "validate.samples": int,
    "eigen.count": int,
    "oracle.steps": int,
    "oracle.slope_min": float,
    "oracle.slope_max": float,
    "oracle.slope_step": float,
    "output.dir": str,
}

_DEFAULTS: dict = {
    "domain.kind": "interval",
    "domain.length": 1.0,
    "domain.width": 1.0,
    "domain.height": 1.0,
    "grid.n": 127,
    "grid.nx": 63,
    "grid.ny": 63,
    "nonlinearity.name": "cubic",
    "nonlinearity.lambda": 60.0,
    "nonlinearity.delta": 1.0,
    "eigen.count": 8,
    "validate.samples": 512,
    "oracle.steps": 4096,
    "oracle.slope_min": -50.0,
    "oracle.slope_max": 50.0,
    "oracle.slope_step": 0.01,
    "output.dir": "out",
}

_PRESET_SETTINGS = {
    "p1-interval": {"domain.kind": "interval", "domain.length": 1.0, "grid.n": 127},
    "p2-square": {"domain.kind": "rectangle", "domain.width": 1.0,
                  "domain.height": 1.0, "grid.nx": 63, "grid.ny": 63},
}


def parse_config_file(path: str) -> dict:
    """Read `key = value` lines; '#' starts a comment."""
    entries: dict = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            entries[key] = _SCHEMA[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return entries


@dataclass
class RunConfig:
    """A fully resolved run: defaults, then preset, then file, then flags."""

    settings: dict = field(default_factory=dict)
    preset: str | None = None
    out_requested: bool = False

    @classmethod
    def resolve(cls, config_path: str | None, preset: str | None,
                n: int | None, out: str | None) -> "RunConfig":
        file_entries = parse_config_file(config_path) if config_path else {}
        preset_name = preset or file_entries.get("preset")
        settings = dict(_DEFAULTS)
        if preset_name is not None:
            if preset_name not in _PRESET_SETTINGS:
                raise ConfigError(
                    f"unknown preset {preset_name!r}; available: "
                    f"{', '.join(PRESET_NAMES)}")
            settings.update(_PRESET_SETTINGS[preset_name])
        settings.update({k: v for k, v in file_entries.items() if k != "preset"})
        if n is not None:
            if n < 3:
                raise ConfigError("--n must be at least 3")
            settings["grid.n"] = n
            settings["grid.nx"] = n
            settings["grid.ny"] = n
        if out is not None:
            settings["output.dir"] = out
        return cls(settings=settings, preset=preset_name,
                   out_requested=out is not None or "output.dir" in file_entries)

    def domain(self) -> DomainSpec:
        kind = self.settings["domain.kind"]
        try:
            if kind == "interval":
                return DomainSpec.interval(self.settings["domain.length"],
                                           self.settings["grid.n"])
            if kind == "rectangle":
                return DomainSpec.rectangle(self.settings["domain.width"],
                                            self.settings["domain.height"],
                                            self.settings["grid.nx"],
                                            self.settings["grid.ny"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        raise ConfigError(f"domain.kind must be interval or rectangle, got {kind!r}")

    def nonlinearity(self, spec: DomainSpec) -> Nonlinearity:
        name = self.settings["nonlinearity.name"]
        if name != "cubic":
            raise ConfigError(f"unknown nonlinearity preset {name!r}")
        try:
            return cubic_nonlinearity(spec, self.settings["nonlinearity.lambda"],
                                      self.settings["nonlinearity.delta"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def _options(self, cls, prefix, extra=()):
        kwargs = {}
        for name in list(cls.__dataclass_fields__) + list(extra):
            key = f"{prefix}.{name}"
            if key in self.settings:
                kwargs[name] = self.settings[key]
        if "poisson.tol" in self.settings and "poisson_tol" in cls.__dataclass_fields__:
            kwargs["poisson_tol"] = self.settings["poisson.tol"]
        return cls(**kwargs)

    def descent_options(self) -> DescentOptions:
        return self._options(DescentOptions, "descent")

    def mp_options(self) -> MPOptions:
        return self._options(MPOptions, "mountainpass")

    def output_dir(self) -> Path:
        return Path(self.settings["output.dir"])


# -- serialization ---------------------------------------------------------

def write_field_csv(path: Path, spec: DomainSpec, u: Field) -> None:
    """Write a field with boundary rows included and u = 0 there."""
    axes = spec.axes()
    with open(path, "w") as fh:
        if spec.ndim == 1:
            (h,) = spec.spacings
            (L,) = spec.lengths
            xs = np.concatenate(([0.0], axes[0], [L]))
            us = np.concatenate(([0.0], u.values, [0.0]))
            fh.write("x,u\n")
            for x, val in zip(xs, us):
                fh.write(f"{x:.17g},{val:.17g}\n")
        else:
            Lx, Ly = spec.lengths
            xs = np.concatenate(([0.0], axes[0], [Lx]))
            ys = np.concatenate(([0.0], axes[1], [Ly]))
            grid = np.zeros((len(xs), len(ys)))
            grid[1:-1, 1:-1] = u.reshaped()
            fh.write("x,y,u\n")
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    fh.write(f"{x:.17g},{y:.17g},{grid[i, j]:.17g}\n")


def read_field_csv(path: Path, spec: DomainSpec) -> Field:
    """Reload a field written by write_field_csv; exact for 17-digit output."""
    rows = Path(path).read_text().strip().splitlines()
    header = rows[0].split(",")
    data = np.array([[float(tok) for tok in row.split(",")] for row in rows[1:]])
    if spec.ndim == 1:
        if header != ["x", "u"]:
            raise ValueError(f"unexpected header {header}")
        values = data[:, 1]
        if len(values) != spec.counts[0] + 2:
            raise ValueError("row count does not match the grid")
        return Field(spec, values[1:-1])
    if header != ["x", "y", "u"]:
        raise ValueError(f"unexpected header {header}")
    nx, ny = spec.counts
    grid = data[:, 2].reshape(nx + 2, ny + 2)
    return Field(spec, grid[1:-1, 1:-1].ravel())


_POINT_FILES = ("u_minus.csv", "u_plus.csv", "u_star.csv", "u_zero.csv")


def report_to_json(report: SolveReport, files: list[str] | None = None) -> str:
    body = report.to_dict()
    if files is not None:
        for entry, name in zip(body["points"], files):
            entry["file"] = name
    body["meta"] = {
        "tool": "trisol",
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


# -- subcommands -----------------------------------------------------------

def cmd_solve(cfg: RunConfig) -> int:
    spec = cfg.domain()
    nl = cfg.nonlinearity(spec)
    report = run_pipeline(
        spec, nl,
        descent_opts=cfg.descent_options(),
        mp_opts=cfg.mp_options(),
        validate_samples=cfg.settings["validate.samples"],
        morse_num_eigs=cfg.settings.get("morse.num_eigs"),
        morse_tol=cfg.settings.get("morse.tol"),
        preset=cfg.preset,
    )
    out = cfg.output_dir()
    out.mkdir(parents=True, exist_ok=True)
    for point, name in zip(report.points, _POINT_FILES):
        write_field_csv(out / name, spec, point.u)
    (out / "report.json").write_text(report_to_json(report, list(_POINT_FILES)))
    summary = {"flags": report.flags, "all_ok": report.all_ok,
               "report": str(out / "report.json")}
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0 if report.all_ok else 1


def cmd_eigen(cfg: RunConfig) -> int:
    spec = cfg.domain()
    pairs = eigenpairs(spec, cfg.settings["eigen.count"])
    body = {
        "grid": spec.describe(),
        "eigenvalues": [p.lam for p in pairs],
        "pairs": [{"rank": p.rank, "lambda": p.lam, "mode": list(p.mode)}
                  for p in pairs],
    }
    text = json.dumps(body, indent=2, sort_keys=True)
    print(text)
    _maybe_write(cfg, "eigen.json", text)
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    spec = cfg.domain()
    nl = cfg.nonlinearity(spec)
    report = validate_condition_g(nl, spec, cfg.settings["validate.samples"])
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True)
    print(text)
    _maybe_write(cfg, "validate.json", text)
    return 0 if report.ok else 1


def cmd_oracle(cfg: RunConfig) -> int:
    spec = cfg.domain()
    if spec.ndim != 1:
        raise ConfigError("the shooting oracle needs an interval domain")
    nl = cfg.nonlinearity(spec)
    (length,) = spec.lengths
    lo = cfg.settings["oracle.slope_min"]
    hi = cfg.settings["oracle.slope_max"]
    step = cfg.settings["oracle.slope_step"]
    steps = cfg.settings["oracle.steps"]
    slopes = np.arange(lo, hi + 0.5 * step, step)
    endpoints, blown = sweep(nl, length, slopes, steps)
    brackets = sign_change_brackets(slopes, endpoints, blown)
    branches = []
    for bracket in brackets:
        shot = find_branch(nl, length, bracket, steps)
        interior = shot.values[1:-1]
        crossings = int(np.sum(interior[:-1] * interior[1:] < 0.0))
        branches.append({
            "slope": shot.slope,
            "endpoint": shot.endpoint,
            "amplitude": float(np.max(np.abs(shot.values))),
            "interior_sign_changes": crossings,
        })
    body = {
        "slope_range": [float(lo), float(hi)],
        "slope_step": float(step),
        "blown_up": int(np.sum(blown)),
        "branch_count": len(branches),
        "branches": branches,
    }
    text = json.dumps(body, indent=2, sort_keys=True)
    print(text)
    _maybe_write(cfg, "oracle.json", text)
    return 0 if branches else 1


def _maybe_write(cfg: RunConfig, name: str, text: str) -> None:
    if cfg.out_requested:
        out = cfg.output_dir()
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="trisol",
        description="Three nontrivial solutions of -lap u = g(u) with "
                    "zero Dirichlet data, with verification checks.")
    parser.add_argument("command", choices=["solve", "eigen", "validate", "oracle"])
    parser.add_argument("--config", help="path to a key = value config file")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--n", type=int, help="interior nodes per axis override")
    parser.add_argument("--preset", help="p1-interval or p2-square")
    args = parser.parse_args(argv)

    try:
        cfg = RunConfig.resolve(args.config, args.preset, args.n, args.out)
        handler = {"solve": cmd_solve, "eigen": cmd_eigen,
                   "validate": cmd_validate, "oracle": cmd_oracle}[args.command]
        return handler(cfg)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (PathCollapseError, ValueError, RuntimeError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
