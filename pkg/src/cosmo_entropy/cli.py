"""Command-line driver.

Options may come from a TOML config file (``--config``); explicit flags
win. Keys mirror the long flag names with ``-`` replaced by ``_``, plus an
optional ``[vary]`` table mapping a model parameter to a list of values::

    model = "exp"
    a = 1.0
    b = 1.0
    k_min = 0.05
    k_max = 3.0
    k_steps = 60
    quantities = ["s_en", "s_cr", "d"]

    [vary]
    c = [1.0, 0.7, 0.5, 0.3]

Exit status: 0 success, 1 usage error, 2 numeric failure, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .bogoliubov import analytic_coeffs
from .cosmology import ModeParams, make_model, model_params
from .errors import CosmoEntropyError, DomainError
from .mode_oracle import OracleConfig, write_trajectory
from .sweep import (
    ENGINES,
    FORMATS,
    Grid,
    OutputError,
    SweepSpec,
    emit,
    evaluate_point,
    find_a_max,
    find_m_max,
    run_sweep,
    sweep_columns,
)
from .thermo import REPORT_FIELDS, density_matrix_spectrum, entanglement_entropy, spectrum_entropy

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

DEFAULTS: dict[str, Any] = {
    "model": "exp",
    "a": 1.0,
    "b": 1.0,
    "c": 1.0,
    "epsilon": 1.0,
    "rho": 1.0,
    "k_min": 0.05,
    "k_max": 3.0,
    "k_steps": 60,
    "m_min": 0.05,
    "m_max": 3.0,
    "m_steps": 60,
    "log_grid": False,
    "engine": "analytic",
    "quantities": list(REPORT_FIELDS),
    "format": "csv",
    "out": None,
    "units": "nats",
    "tol": None,
    "span": None,
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "max_steps": 10_000_000,
    "jobs": 1,
    "k": 1.0,
    "m": 1.0,
    "a_min": 0.2,
    "a_max": 20.0,
    "quantity": "s_cr",
    "gamma": None,
    "n_max": 60,
    "dump_trajectory": None,
    "vary": {},
}

# per-command fallback for --tol
_TOL_DEFAULTS = {"mmax": 1e-6, "amax": 1e-6, "verify": 1e-5}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_vary(text: str) -> tuple[str, tuple[float, ...]]:
    try:
        name, values = text.split("=", 1)
        return name.strip(), tuple(float(v) for v in values.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAME=V1,V2,..., got {text!r}") from None


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    # every default is None so config-file values can sit underneath explicit flags
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--config", help="TOML file with option values")
    g.add_argument("--model", choices=("exp", "tanh"))
    for p in ("a", "b", "c", "epsilon", "rho"):
        g.add_argument(f"--{p}", type=float)
    g.add_argument("--vary", action="append", type=_parse_vary, metavar="NAME=V1,V2,...",
                   help="repeat the run for each value of a model parameter")
    o = common.add_argument_group("output")
    o.add_argument("--format", choices=FORMATS)
    o.add_argument("--out", help="output path (default stdout)")
    o.add_argument("--units", choices=("nats", "bits"))
    oc = common.add_argument_group("oracle")
    oc.add_argument("--span", type=float, metavar="L", help="integrate over [-L, L]")
    oc.add_argument("--rel-tol", type=float)
    oc.add_argument("--abs-tol", type=float)
    oc.add_argument("--max-steps", type=int)

    grid = argparse.ArgumentParser(add_help=False)
    gg = grid.add_argument_group("grid")
    for axis in ("k", "m"):
        gg.add_argument(f"--{axis}-min", type=float)
        gg.add_argument(f"--{axis}-max", type=float)
        gg.add_argument(f"--{axis}-steps", type=int)
    gg.add_argument("--log-grid", action="store_true", default=None)
    gg.add_argument("--quantities", type=_csv_list, help="comma-separated report fields")
    gg.add_argument("--jobs", type=int, help="worker processes")

    parser = _Parser(prog="cosmo-entropy", description="Particle creation and entanglement entropy "
                     "for scalar modes in asymptotically flat expanding universes.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", parents=[common, grid], help="grid over (k, m)")
    p.add_argument("--engine", choices=ENGINES)

    p = sub.add_parser("verify", parents=[common, grid], help="analytic vs ODE oracle on a grid")
    p.add_argument("--tol", type=float, help="max tolerated relative disagreement in beta_sq (default 1e-5)")

    p = sub.add_parser("point", parents=[common], help="full report for one mode")
    p.add_argument("--k", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--engine", choices=ENGINES)
    p.add_argument("--dump-trajectory", metavar="PATH", help="write the oracle trajectory as CSV")

    p = sub.add_parser("mmax", parents=[common], help="mass maximizing an entropy at fixed k")
    p.add_argument("--k", type=float)
    p.add_argument("--m-min", type=float)
    p.add_argument("--m-max", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--quantity", choices=REPORT_FIELDS)

    p = sub.add_parser("amax", parents=[common], help="inflation rate maximizing an entropy (exp model)")
    p.add_argument("--k", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--a-min", type=float)
    p.add_argument("--a-max", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--quantity", choices=REPORT_FIELDS)

    p = sub.add_parser("spectrum", parents=[common], help="reduced density-matrix eigenvalues")
    p.add_argument("--gamma", type=float, help="use this gamma instead of computing one from (k, m)")
    p.add_argument("--k", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--n-max", type=int)
    return parser


def load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"invalid config {path}: {exc}") from exc
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
        raise UsageError(f"unknown config keys in {path}: {unknown}")
    if isinstance(data.get("quantities"), str):
        data["quantities"] = _csv_list(data["quantities"])
    return data


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags over config over built-in defaults."""
    opts = dict(DEFAULTS)
    opts.update(load_config(getattr(args, "config", None)))
    for key, value in vars(args).items():
        if key in ("config", "command", "vary"):
            continue
        if value is not None:
            opts[key] = value
    vary = dict(opts.get("vary") or {})
    for name, values in getattr(args, "vary", None) or ():
        vary[name] = values
    opts["vary"] = {name: tuple(float(v) for v in values) for name, values in vary.items()}
    if opts["tol"] is None:
        opts["tol"] = _TOL_DEFAULTS.get(args.command)
    return opts


def _model(opts):
    return make_model(opts["model"], **{p: opts[p] for p in ("a", "b", "c", "epsilon", "rho")})


def _oracle(opts) -> OracleConfig:
    return OracleConfig(eta_span=opts["span"], rel_tol=opts["rel_tol"], abs_tol=opts["abs_tol"],
                        max_steps=opts["max_steps"])


def _spec(opts, engine: str) -> SweepSpec:
    log = bool(opts["log_grid"])
    return SweepSpec(
        model=_model(opts),
        k_grid=Grid(opts["k_min"], opts["k_max"], opts["k_steps"], log),
        m_grid=Grid(opts["m_min"], opts["m_max"], opts["m_steps"], log),
        param_overrides=tuple(opts["vary"].items()),
        engine=engine,
        quantities=tuple(opts["quantities"]),
        units=opts["units"],
        oracle=_oracle(opts),
    )


def _overridden_models(opts):
    base = _model(opts)
    spec = SweepSpec(base, Grid(0, 0, 1), Grid(0, 0, 1), param_overrides=tuple(opts["vary"].items()))
    return spec.models()


def cmd_sweep(opts) -> int:
    spec = _spec(opts, opts["engine"])
    failed = emit(run_sweep(spec, jobs=opts["jobs"]), sweep_columns(spec), opts["format"], opts["out"])
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_verify(opts) -> int:
    spec = _spec(opts, "both")
    worst = 0.0
    failed = 0

    def tracked():
        nonlocal worst, failed
        for row in run_sweep(spec, jobs=opts["jobs"]):
            if row.get("error"):
                failed += 1
            else:
                worst = max(worst, row["oracle_rel_err"])
            yield row

    emit(tracked(), sweep_columns(spec), opts["format"], opts["out"])
    ok = not failed and worst <= opts["tol"]
    print(f"verify: max oracle_rel_err = {worst:.3e} (tol {opts['tol']:.1e}), "
          f"{failed} failed rows -> {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_point(opts) -> int:
    model = _model(opts)
    spec = SweepSpec(model, Grid(opts["k"], opts["k"], 1), Grid(opts["m"], opts["m"], 1),
                     engine=opts["engine"], units=opts["units"], oracle=_oracle(opts))
    row = evaluate_point(model, opts["k"], opts["m"], spec.engine, spec.quantities, spec.units, spec.oracle)
    failed = emit([row], sweep_columns(spec), opts["format"], opts["out"])
    if opts["dump_trajectory"]:
        try:
            write_trajectory(opts["dump_trajectory"], model, ModeParams(opts["k"], opts["m"]), _oracle(opts))
        except OSError as exc:
            raise OutputError(f"cannot write {opts['dump_trajectory']}: {exc.strerror or exc}") from exc
    return EXIT_NUMERIC if failed else EXIT_OK


def _argmax_rows(opts, kind: str):
    for model in _overridden_models(opts):
        row = dict(model_params(model))
        try:
            if kind == "m":
                row["k"] = opts["k"]
                res = find_m_max(model, opts["k"], (opts["m_min"], opts["m_max"]), opts["tol"], opts["quantity"])
                row["m_max"] = res.x
            else:
                row.update(k=opts["k"], m=opts["m"])
                res = find_a_max(model, model.b, model.c, ModeParams(opts["k"], opts["m"]),
                                 (opts["a_min"], opts["a_max"]), opts["tol"], opts["quantity"])
                row["a_max"] = res.x
            row[f"{opts['quantity']}_at_max"] = res.value
            row["error"] = ""
        except CosmoEntropyError as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        yield row


def cmd_mmax(opts) -> int:
    base = _model(opts)
    columns = list(model_params(base)) + ["k", "m_max", f"{opts['quantity']}_at_max", "error"]
    failed = emit(_argmax_rows(opts, "m"), columns, opts["format"], opts["out"])
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_amax(opts) -> int:
    if opts["model"] != "exp":
        raise UsageError("amax applies to the exponential model only")
    base = _model(opts)
    columns = [p for p in model_params(base) if p != "a"] + ["k", "m", "a_max", f"{opts['quantity']}_at_max", "error"]
    failed = emit(_argmax_rows(opts, "a"), columns, opts["format"], opts["out"])
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_spectrum(opts) -> int:
    gamma = opts["gamma"]
    if gamma is None:
        model = _model(opts)
        gamma = analytic_coeffs(model, ModeParams(opts["k"], opts["m"])).gamma
    lams = density_matrix_spectrum(gamma, opts["n_max"])
    rows = [{"n": n, "eigenvalue": lam} for n, lam in enumerate(lams)]
    emit(rows, ["n", "eigenvalue"], opts["format"], opts["out"])
    scale = math.log(2.0) if opts["units"] == "bits" else 1.0
    print(f"spectrum: gamma = {gamma:.17g}, truncated entropy = {spectrum_entropy(lams) / scale:.17g}, "
          f"closed form = {entanglement_entropy(gamma) / scale:.17g} {opts['units']}, "
          f"deficit = {gamma ** (opts['n_max'] + 1):.3e}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "point": cmd_point,
    "mmax": cmd_mmax,
    "amax": cmd_amax,
    "spectrum": cmd_spectrum,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = resolve(args)
        return COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"cosmo-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"cosmo-entropy: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"cosmo-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CosmoEntropyError as exc:
        print(f"cosmo-entropy: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
