"""Command-line front end: ``python -m ramaniton <subcommand> ...``.

Parameters are layered preset < config file < flags. Grids use
``start:stop:step`` with an inclusive stop; ranges use ``start:stop``.
Floats are written with 12 significant digits so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dynamics, oracle, sweep
from .errors import RamanitonError, TruncationInadequate
from .model import (
    PRESETS, ModelParams, constants_from_config, dimensionless_length_to_physical,
    kerr_eta, load_config,
)

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_OMEGA_RATIO = 12.4
MAX_GRID_POINTS = 10_000_000
FLOAT_FORMAT = ".12g"

# defaults of the oracle verification regime
ORACLE_DEFAULTS = {"omega_ratio": "12.4", "eta": "0.2", "q": "1"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Resolved invocation: merged key=value parameters plus subcommand options."""

    subcommand: str
    values: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    output: Optional[str] = None
    fmt: str = "csv"

    def number(self, key: str, default=None) -> float:
        raw = self.values.get(key, default)
        if raw is None:
            flag = "--" + key.replace("_", "-")
            raise UsageError(f"{self.subcommand}: missing required parameter {key} ({flag})")
        return parse_float(raw, key)

    def params(self, q: float) -> ModelParams:
        return ModelParams(omega_ratio=self.number("omega_ratio", DEFAULT_OMEGA_RATIO),
                           eta=self.number("eta"), q=q)


def parse_float(raw, name="value") -> float:
    if isinstance(raw, (int, float)):
        return float(raw)
    text = str(raw).strip().lower()
    if text in ("pi/2", "pi"):
        return math.pi / 2 if text == "pi/2" else math.pi
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"{name}: cannot parse {raw!r} as a number") from None
    if not math.isfinite(value):
        raise UsageError(f"{name}: must be finite, got {raw!r}")
    return value


def parse_grid(raw: str, name="grid") -> np.ndarray:
    """``x`` or ``start:stop:step`` with inclusive stop."""
    parts = str(raw).split(":")
    if len(parts) == 1:
        return np.array([parse_float(parts[0], name)])
    if len(parts) != 3:
        raise UsageError(f"{name}: expected start:stop:step, got {raw!r}")
    start, stop, step = (parse_float(p, name) for p in parts)
    if step <= 0 or stop < start:
        raise UsageError(f"{name}: need step > 0 and stop >= start, got {raw!r}")
    n = int(round((stop - start) / step)) + 1
    if n > MAX_GRID_POINTS:
        raise UsageError(f"{name}: {n} points exceeds the limit of {MAX_GRID_POINTS}")
    return start + step * np.arange(n)


def parse_range(raw: str, name="range") -> tuple[float, float]:
    parts = str(raw).split(":")
    if len(parts) != 2:
        raise UsageError(f"{name}: expected start:stop, got {raw!r}")
    lo, hi = (parse_float(p, name) for p in parts)
    if not hi > lo:
        raise UsageError(f"{name}: need stop > start, got {raw!r}")
    return lo, hi


def fmt_float(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return format(float(x), FLOAT_FORMAT)


def json_float(x):
    if x is None or math.isnan(x):
        return None
    return float(format(float(x), FLOAT_FORMAT))


def render_table(columns, rows, fmt: str) -> str:
    if fmt == "json":
        data = {"columns": list(columns),
                "rows": [[json_float(None if v is None else float(v)) for v in r] for r in rows]}
        return json.dumps(data, indent=2) + "\n"
    lines = [",".join(columns)]
    lines += [",".join(fmt_float(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def render_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- subcommands ---------------------------------------------------------------

def cmd_dispersion(cfg: RunConfig) -> tuple[str, int]:
    q_grid = parse_grid(cfg.values.get("q") or _missing(cfg, "q"), "q")
    base = cfg.params(q=float(q_grid[0]))
    table = sweep.sweep_dispersion(base, q_grid)
    return render_table(("q", "omega1", "omega2", "omega3"), table, cfg.fmt), EXIT_OK


def cmd_evolve(cfg: RunConfig) -> tuple[str, int]:
    taus = parse_grid(cfg.options.get("tau") or _missing(cfg, "tau"), "tau")
    params = cfg.params(q=cfg.number("q"))
    phi = _phi(cfg.options.get("phi"), default=math.pi / 2)
    series = dynamics.evolve_series(params, taus, phi)
    rows = [(p.tau, p.N_S, p.N_aS, p.N_c, p.S_db, p.g2) for p in series]
    return render_table(("tau", "N_S", "N_aS", "N_c", "S_db", "g2"), rows, cfg.fmt), EXIT_OK


def cmd_sweep(cfg: RunConfig) -> tuple[str, int]:
    q_grid = parse_grid(cfg.values.get("q") or _missing(cfg, "q"), "q")
    tau = parse_float(cfg.options.get("tau") or _missing(cfg, "tau"), "tau")
    phi = _phi(cfg.options.get("phi"), default=None)
    table = sweep.sweep_q(cfg.params(q=float(q_grid[0])), q_grid, tau,
                          phi_policy="optimal" if phi is None else phi)
    return render_table(("q", "S_db", "N_S", "N_aS", "g2"), table, cfg.fmt), EXIT_OK


def cmd_optimize(cfg: RunConfig) -> tuple[str, int]:
    q_range = parse_range(cfg.options["q_range"], "q-range")
    tau_range = parse_range(cfg.options["tau_range"], "tau-range")
    params = cfg.params(q=q_range[0])
    best = sweep.optimize_global(params, q_range, tau_range)
    result = {"q_star": json_float(best.q_star), "tau_star": json_float(best.tau_star),
              "S_db": json_float(best.S_db)}
    constants = constants_from_config(cfg.values)
    if constants is not None:
        length = dimensionless_length_to_physical(best.tau_star, constants)
        result["L_mm"] = json_float(1e3 * length)
    return render_json(result), EXIT_OK


def cmd_oracle(cfg: RunConfig) -> tuple[str, int]:
    values = {**ORACLE_DEFAULTS, **cfg.values}
    params = ModelParams(omega_ratio=parse_float(values["omega_ratio"], "omega_ratio"),
                         eta=parse_float(values["eta"], "eta"),
                         q=parse_float(values["q"], "q"))
    taus = parse_grid(cfg.options["tau"], "tau")
    phi = _phi(cfg.options.get("phi"), default=math.pi / 2)
    cutoff = int(cfg.options["cutoff"])
    if cutoff < 1:
        raise UsageError(f"cutoff must be >= 1, got {cutoff}")
    try:
        report = oracle.compare(params, taus, phi, cutoff)
    except TruncationInadequate as exc:
        print(f"oracle: truncation inadequate: {exc}", file=sys.stderr)
        text = exc.report.to_json() + "\n" if exc.report is not None else ""
        return text, EXIT_VERIFY
    code = EXIT_OK if report.passed else EXIT_VERIFY
    if not report.passed:
        print("oracle: " + "; ".join(report.failures), file=sys.stderr)
    return report.to_json() + "\n", code


def cmd_kerr_eta(cfg: RunConfig) -> tuple[str, int]:
    eta = kerr_eta(cfg.number("n0"), cfg.number("n2"), cfg.number("intensity"))
    return render_json({"eta": json_float(eta)}), EXIT_OK


COMMANDS = {
    "dispersion": cmd_dispersion, "evolve": cmd_evolve, "sweep": cmd_sweep,
    "optimize": cmd_optimize, "oracle": cmd_oracle, "kerr-eta": cmd_kerr_eta,
}


def _missing(cfg, name):
    raise UsageError(f"{cfg.subcommand}: missing required --{name}")


def _phi(raw, default):
    if raw is None:
        return default
    if str(raw).strip().lower() in ("opt", "optimal"):
        return None
    return parse_float(raw, "phi")


# -- argument parsing ----------------------------------------------------------

PARAM_FLAGS = {
    "omega_ratio": "--omega-ratio", "eta": "--eta", "q": "--q",
    "Omega_hz": "--Omega-hz", "n0": "--n0", "n2": "--n2", "intensity": "--intensity",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value parameter file")
    common.add_argument("--preset", choices=sorted(PRESETS), help="named parameter set")
    for key, flag in PARAM_FLAGS.items():
        common.add_argument(flag, dest=key, metavar=key.upper())
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="ramaniton", description="Photon-phonon Raman squeezing calculator.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("dispersion", parents=[common],
                   help="mode frequencies over a q grid (--q start:stop:step)")
    p = sub.add_parser("evolve", parents=[common], help="observables along a tau grid")
    p.add_argument("--tau", help="tau grid start:stop:step")
    p.add_argument("--phi", help="quadrature phase in radians, 'pi/2' or 'opt' (default pi/2)")
    p = sub.add_parser("sweep", parents=[common], help="squeezing over a q grid at fixed tau")
    p.add_argument("--tau", help="propagation time")
    p.add_argument("--phi", help="quadrature phase (default: optimal per point)")
    p = sub.add_parser("optimize", parents=[common], help="global squeezing maximum")
    p.add_argument("--q-range", dest="q_range", default="0.99:1.01")
    p.add_argument("--tau-range", dest="tau_range", default="0:20000")
    p = sub.add_parser("oracle", parents=[common], help="Fock-space cross-check")
    p.add_argument("--tau", default="0:4:0.1")
    p.add_argument("--phi")
    p.add_argument("--cutoff", type=int, default=16)
    sub.add_parser("kerr-eta", parents=[common], help="coupling estimate from n0, n2, intensity")
    return parser


def resolve(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.preset:
        params, constants = PRESETS[args.preset]
        values.update(omega_ratio=params.omega_ratio, eta=params.eta, q=params.q,
                      Omega_hz=constants.Omega / (2 * math.pi), n0=constants.n0,
                      n2=constants.n2, intensity=constants.intensity)
    if args.config:
        try:
            values.update(load_config(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    values.update({k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k) is not None})
    options = {k: getattr(args, k) for k in ("tau", "phi", "q_range", "tau_range", "cutoff")
               if hasattr(args, k)}
    return RunConfig(subcommand=args.subcommand, values=values, options=options,
                     output=args.output, fmt=args.fmt)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        text, code = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, ValueError) as exc:
        # InvalidParameters is a ValueError: bad configs are usage errors
        parser.exit(EXIT_USAGE, f"ramaniton {args.subcommand}: error: {exc}\n")
    except RamanitonError as exc:
        parser.exit(EXIT_ERROR, f"ramaniton {args.subcommand}: {type(exc).__name__}: {exc}\n")
    if cfg.output:
        with open(cfg.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
