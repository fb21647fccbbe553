"""``secrecy-lab`` command line: parameter sweeps, MGF tables and Monte-Carlo validation.

All output is CSV on ``--out`` (default stdout): one ``#`` comment line with
units, a header row, then numeric rows with 17 significant digits.

Exit codes: 0 success, 1 validation failure, 2 bad configuration,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Sequence

from .capacity import QuadratureConfig, average_secrecy_capacity
from .channel import SystemParams
from .mgf import mgf_eav_link, mgf_interference, mgf_main_link, mgf_psi
from .montecarlo import (
    DEFAULT_SAMPLES,
    estimate_capacities,
    estimate_mgf,
    eav_link_weight,
    interference_weight_d,
    interference_weight_e,
    main_link_weight,
)
from .specfun import ConvergenceError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SEED_ENV = "SECRECY_LAB_SEED"
DEFAULT_SEED = 20190611
UNITS_LINE = "# units: powers W, distances m, capacities bits/s/Hz"
SIGMA_LIMIT = 4.0
VALIDATE_Z = (0.01, 0.1, 1.0)

SWEEP_VARIABLES = ("k", "r_d", "p_s", "r_max", "r_int", "n_0", "beta")
MGF_KINDS = ("psi", "interference", "main", "eavesdropper")

# flag -> SystemParams field
PARAM_FLAGS = {
    "ps": "p_s",
    "pk": "p_k",
    "k": "k",
    "rd": "r_d",
    "rmax": "r_max",
    "rint": "r_int",
    "beta": "beta",
    "n0": "n_0",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: tuple
    fixed: SystemParams = field(default_factory=SystemParams)
    mc_check: bool = False
    mc_samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep variable must be one of {', '.join(SWEEP_VARIABLES)}, got {self.variable!r}")
        if not self.values:
            raise ConfigError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError("sweep values must be strictly increasing")
        if self.variable == "k" and any(int(v) != v or v < 0 for v in self.values):
            raise ConfigError("k sweep values must be nonnegative integers")
        if self.mc_samples < 1:
            raise ConfigError("mc_samples must be >= 1")

    def points(self) -> list[SystemParams]:
        out = []
        for v in self.values:
            value = int(v) if self.variable == "k" else float(v)
            try:
                out.append(self.fixed.with_(**{self.variable: value}))
            except ValueError as exc:
                raise ConfigError(f"{self.variable}={v}: {exc}") from None
        return out


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return "%.17g" % x


def write_csv(out: IO[str], header: Sequence[str], rows) -> None:
    out.write(UNITS_LINE + "\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join("" if v is None else fmt(v) for v in row) + "\n")


# ---------------------------------------------------------------- commands


def _sweep_point(args):
    variable, value, params, mc_check, mc_samples, seed = args
    try:
        res = average_secrecy_capacity(params, QuadratureConfig())
    except ConvergenceError as exc:
        raise ConvergenceError(f"{variable}={fmt(value)}: {exc}") from None
    row = [variable, value, res.c_d, res.c_e, res.c_s, None, None, None]
    if mc_check:
        mc = estimate_capacities(params, mc_samples, seed)
        row[5:] = [mc.c_s_diff.mean, mc.c_s_max.mean, mc.c_s_diff.std_error]
    return row


def cmd_sweep(spec: SweepSpec, out: IO[str], jobs: int = 1) -> int:
    tasks = [
        (spec.variable, v, p, spec.mc_check, spec.mc_samples, spec.seed)
        for v, p in zip(spec.values, spec.points())
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]
    write_csv(
        out,
        ["variable", "value", "c_d", "c_e", "c_s", "mc_c_s_diff", "mc_c_s_max", "mc_stderr"],
        rows,
    )
    return EXIT_OK


def _mgf_evaluator(which: str, params: SystemParams):
    if which == "psi":
        return lambda z: mgf_psi(z, params.r_int, params.beta)
    if which == "interference":
        return lambda z: mgf_interference(z, params, params.r_int)
    if which == "main":
        return lambda z: mgf_main_link(z, params.p_s, params.r_d, params.beta)
    if which == "eavesdropper":
        return lambda z: mgf_eav_link(z, params.p_s, params.r_max, params.beta)
    raise ConfigError(f"unknown MGF {which!r}; choose from {', '.join(MGF_KINDS)}")


def cmd_mgf_table(which: str, z_values: Sequence[float], params: SystemParams, out: IO[str]) -> int:
    """Tabulate one MGF. ``psi`` uses radius ``r_int`` and the raw argument z."""
    if any(z < 0 for z in z_values):
        raise ConfigError("z values must be nonnegative")
    evaluate = _mgf_evaluator(which, params)
    rows = []
    for z in z_values:
        m = evaluate(z)
        rows.append([z, m.value, m.method.value])
    write_csv(out, ["z", "value", "method"], rows)
    return EXIT_OK


def cmd_validate(params: SystemParams, n: int, seed: int, out: IO[str]) -> int:
    """Compare analytic MGFs and capacities with Monte-Carlo estimates."""
    if n < 1000:
        raise ConfigError(f"validate needs at least 1000 samples, got {n}")
    rows = []
    checks = [
        ("mgf_interference_d", interference_weight_d, lambda z: mgf_interference(z, params)),
        ("mgf_interference_e", interference_weight_e, lambda z: mgf_interference(z, params)),
        ("mgf_main", main_link_weight, lambda z: mgf_main_link(z, params.p_s, params.r_d, params.beta)),
        ("mgf_eavesdropper", eav_link_weight, lambda z: mgf_eav_link(z, params.p_s, params.r_max, params.beta)),
    ]
    for name, weight, analytic in checks:
        estimates = estimate_mgf(weight, list(VALIDATE_Z), params, n, seed)
        for z, est in zip(VALIDATE_Z, estimates):
            a = analytic(z).value
            rows.append([f"{name}@z={z:g}", a, est.mean, est.std_error, est.sigma_distance(a)])
    res = average_secrecy_capacity(params)
    mc = estimate_capacities(params, n, seed)
    for name, a, est in (("c_d", res.c_d, mc.c_d), ("c_e", res.c_e, mc.c_e), ("c_s_diff", res.c_s, mc.c_s_diff)):
        rows.append([name, a, est.mean, est.std_error, est.sigma_distance(a)])
    write_csv(out, ["quantity", "analytic", "mc_mean", "mc_stderr", "sigma_distance"], rows)
    ok = all(abs(r[4]) <= SIGMA_LIMIT for r in rows)
    return EXIT_OK if ok else EXIT_VALIDATION


# ---------------------------------------------------------------- argument handling


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with SystemParams fields (and an optional 'sweep' block)")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    p.add_argument("--jobs", type=int, default=1, help="parallel sweep points")
    p.add_argument("--seed", type=int, help=f"RNG seed (falls back to ${SEED_ENV})")
    p.add_argument("--samples", type=int, help="Monte-Carlo sample count")
    units = {"ps": "W", "pk": "W", "k": "", "rd": "m", "rmax": "m", "rint": "m", "beta": "", "n0": "W"}
    for flag, name in PARAM_FLAGS.items():
        p.add_argument(
            f"--{flag}",
            dest=name,
            type=int if name == "k" else float,
            help=f"override {name}" + (f" [{units[flag]}]" if units[flag] else ""),
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secrecy-lab",
        description="Average secrecy capacity of a double-Rayleigh V2V link under interference. "
        "Powers in watts, distances in meters, capacities in bits/s/Hz.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="sweep one parameter and tabulate capacities")
    _common(sp)
    sp.add_argument("--variable", choices=SWEEP_VARIABLES)
    sp.add_argument("--values", type=_float_list, help="comma-separated increasing values")
    sp.add_argument("--mc", action="store_true", default=None, help="add Monte-Carlo columns")

    mp = sub.add_parser("mgf-table", help="tabulate an MGF with its evaluation method")
    _common(mp)
    mp.add_argument("--which", choices=MGF_KINDS, default="psi")
    mp.add_argument("--z", type=_float_list, default=[0.0, 0.01, 0.1, 1.0, 10.0])

    vp = sub.add_parser("validate", help="analytic vs Monte-Carlo report (exit 1 beyond 4 sigma)")
    _common(vp)
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return data


def _resolve_seed(flag: int | None, configured: int | None = None) -> int:
    """--seed, then the config file, then $SECRECY_LAB_SEED, then the default."""
    if flag is not None:
        seed = flag
    elif configured is not None:
        seed = int(configured)
    elif os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer") from None
    else:
        seed = DEFAULT_SEED
    if not 0 <= seed < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    return seed


def _params(args, config: dict) -> SystemParams:
    values = {k: v for k, v in config.items() if k not in ("sweep", "seed")}
    for name in PARAM_FLAGS.values():
        if getattr(args, name) is not None:
            values[name] = getattr(args, name)
    try:
        return SystemParams.from_dict(values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _run(args) -> int:
    config = _load_config(args.config)
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    if args.command == "sweep":
        block = config.get("sweep", {})
        variable = args.variable or block.get("variable")
        values = args.values if args.values is not None else block.get("values")
        if variable is None or values is None:
            raise ConfigError("sweep needs --variable and --values (or a 'sweep' config block)")
        fixed = _params(args, config)
        seed = _resolve_seed(args.seed, block.get("seed"))
        spec = SweepSpec(
            variable=variable,
            values=tuple(values),
            fixed=fixed,
            mc_check=bool(args.mc if args.mc is not None else block.get("mc_check", False)),
            mc_samples=int(args.samples or block.get("mc_samples", DEFAULT_SAMPLES)),
            seed=seed,
        )
        spec.points()
        return _with_out(args.out, lambda out: cmd_sweep(spec, out, args.jobs))
    params = _params(args, config)
    if args.command == "mgf-table":
        return _with_out(args.out, lambda out: cmd_mgf_table(args.which, args.z, params, out))
    n = args.samples if args.samples is not None else DEFAULT_SAMPLES
    seed = _resolve_seed(args.seed, config.get("seed"))
    return _with_out(args.out, lambda out: cmd_validate(params, n, seed, out))


def _with_out(path: str, fn) -> int:
    if path == "-":
        return fn(sys.stdout)
    with open(path, "w", newline="\n") as fh:
        return fn(fh)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"secrecy-lab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"secrecy-lab: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
