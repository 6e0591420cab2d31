"""Parameter sweeps, argmax searches and flat-file output."""
from __future__ import annotations

import csv
import dataclasses
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .bogoliubov import BogoliubovResult, analytic_coeffs
from .cosmology import CosmologyModel, ModeParams, model_params, omega_in, omega_out
from .errors import CosmoEntropyError, DomainError, NotUnimodal
from .mode_oracle import OracleConfig, oracle_coeffs
from .thermo import ENTROPY_FIELDS, REPORT_FIELDS, full_report

__all__ = [
    "Grid",
    "SweepSpec",
    "ENGINES",
    "FORMATS",
    "DISAGREEMENT_FLOOR",
    "sweep_columns",
    "run_sweep",
    "evaluate_point",
    "maximize",
    "MaxResult",
    "find_m_max",
    "find_a_max",
    "emit",
    "format_rows",
    "OutputError",
]

ENGINES = ("analytic", "oracle", "both")
FORMATS = ("csv", "jsonl")
DISAGREEMENT_FLOOR = 1e-12
_LOG2 = math.log(2.0)


class OutputError(CosmoEntropyError, OSError):
    """Writing results failed; carries the offending path."""


@dataclass(frozen=True)
class Grid:
    """Linear (or log-spaced) grid of ``count`` points on ``[min, max]``."""

    min: float
    max: float
    count: int
    log: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise DomainError(f"grid count must be >= 1, got {self.count}")
        if self.min > self.max:
            raise DomainError(f"grid min {self.min} exceeds max {self.max}")
        if self.log and self.min <= 0:
            raise DomainError("log-spaced grid needs min > 0")

    def values(self) -> list[float]:
        if self.count == 1:
            return [float(self.min)]
        if self.log:
            return [float(v) for v in np.geomspace(self.min, self.max, self.count)]
        return [float(v) for v in np.linspace(self.min, self.max, self.count)]


@dataclass(frozen=True)
class SweepSpec:
    model: CosmologyModel
    k_grid: Grid
    m_grid: Grid
    # e.g. (("c", (1.0, 0.7, 0.5, 0.3)),); applied as an outer cartesian product
    param_overrides: tuple = ()
    engine: str = "analytic"
    quantities: tuple = REPORT_FIELDS
    units: str = "nats"
    oracle: OracleConfig = field(default_factory=OracleConfig)

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise DomainError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        if self.units not in ("nats", "bits"):
            raise DomainError(f"units must be 'nats' or 'bits', got {self.units!r}")
        unknown = [q for q in self.quantities if q not in REPORT_FIELDS]
        if unknown:
            raise DomainError(f"unknown quantities {unknown}; choose from {list(REPORT_FIELDS)}")
        names = model_params(self.model)
        for name, values in self.param_overrides:
            if name not in names:
                raise DomainError(f"cannot vary {name!r} on model {self.model.name!r}")
            if not values:
                raise DomainError(f"override {name!r} has no values")

    def models(self) -> list[CosmologyModel]:
        if not self.param_overrides:
            return [self.model]
        names = [name for name, _ in self.param_overrides]
        combos = itertools.product(*(values for _, values in self.param_overrides))
        return [dataclasses.replace(self.model, **dict(zip(names, combo))) for combo in combos]


def sweep_columns(spec: SweepSpec) -> list[str]:
    cols = list(model_params(spec.model))
    cols += ["k", "m", "omega_in", "omega_out", "alpha_sq", "beta_sq"]
    cols += [q for q in REPORT_FIELDS if q in spec.quantities]
    cols.append("normalization_defect")
    if spec.engine == "both":
        cols.append("oracle_rel_err")
    cols.append("error")
    return cols


def relative_disagreement(a: BogoliubovResult, b: BogoliubovResult) -> float:
    return abs(a.beta_sq - b.beta_sq) / max(a.beta_sq, DISAGREEMENT_FLOOR)


def evaluate_point(
    model: CosmologyModel,
    k: float,
    m: float,
    engine: str = "analytic",
    quantities: Sequence[str] = REPORT_FIELDS,
    units: str = "nats",
    oracle: OracleConfig = OracleConfig(),
) -> dict:
    """One sweep row. Numeric failures land in the ``error`` column."""
    row: dict = dict(model_params(model))
    row.update(k=k, m=m)
    try:
        mode = ModeParams(k, m)
        row["omega_in"] = omega_in(model, mode)
        row["omega_out"] = omega_out(model, mode)
        if engine == "oracle":
            coeffs = oracle_coeffs(model, mode, oracle)
        else:
            coeffs = analytic_coeffs(model, mode)
        rel_err = None
        if engine == "both":
            rel_err = relative_disagreement(coeffs, oracle_coeffs(model, mode, oracle))
        report = full_report(model, mode, coeffs).as_dict()
        if units == "bits":
            for q in ENTROPY_FIELDS:
                report[q] /= _LOG2
        row["alpha_sq"] = coeffs.alpha_sq
        row["beta_sq"] = coeffs.beta_sq
        for q in REPORT_FIELDS:
            if q in quantities:
                row[q] = report[q]
        row["normalization_defect"] = coeffs.normalization_defect
        if engine == "both":
            row["oracle_rel_err"] = rel_err
        row["error"] = ""
    except (CosmoEntropyError, ArithmeticError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _evaluate_star(args):
    return evaluate_point(*args)


def _points(spec: SweepSpec):
    ks = spec.k_grid.values()
    ms = spec.m_grid.values()
    for model in spec.models():
        for k in ks:
            for m in ms:
                yield (model, k, m, spec.engine, spec.quantities, spec.units, spec.oracle)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> Iterator[dict]:
    """Yield one row per grid point: overrides outermost, then ``k``, then ``m``.

    With ``jobs > 1`` points are evaluated in worker processes; results are
    buffered back into grid order so output never depends on scheduling.
    """
    points = _points(spec)
    if jobs <= 1:
        for p in points:
            yield evaluate_point(*p)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_evaluate_star, points, chunksize=8)


# --- argmax -----------------------------------------------------------------

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class MaxResult(tuple):
    """``(argmax, value)`` with named access."""

    def __new__(cls, x: float, value: float):
        return super().__new__(cls, (x, value))

    @property
    def x(self) -> float:
        return self[0]

    @property
    def value(self) -> float:
        return self[1]


def maximize(f: Callable[[float], float], lo: float, hi: float, tol: float, probes: int = 33) -> MaxResult:
    """Golden-section maximizer with a probing preflight.

    ``f`` is sampled on ``probes`` evenly spaced points; the best interior
    sample and its neighbours become the starting bracket. A best sample at
    either end means no interior maximum was bracketed.
    """
    if lo > hi:
        raise DomainError(f"empty range [{lo}, {hi}]")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if hi - lo <= tol:
        x = 0.5 * (lo + hi)
        return MaxResult(x, f(x))
    xs = np.linspace(lo, hi, probes)
    ys = [f(float(x)) for x in xs]
    i = int(np.argmax(ys))
    if i == 0 or i == probes - 1:
        raise NotUnimodal(
            f"maximum on [{lo}, {hi}] sits at the {'lower' if i == 0 else 'upper'} end (x={xs[i]:.6g})"
        )
    a, b = float(xs[i - 1]), float(xs[i + 1])
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return MaxResult(x, f(x))


def _quantity(model: CosmologyModel, mode: ModeParams, quantity: str) -> float:
    return getattr(full_report(model, mode, analytic_coeffs(model, mode)), quantity)


def find_m_max(model: CosmologyModel, k: float, m_range: tuple[float, float], tol: float = 1e-6,
               quantity: str = "s_cr") -> MaxResult:
    """Mass maximizing ``quantity`` (default the creation entropy) at fixed ``k``."""
    lo, hi = map(float, m_range)
    return maximize(lambda m: _quantity(model, ModeParams(k, m), quantity), lo, hi, tol)


def find_a_max(model_template: CosmologyModel, b: float, c: float, mode: ModeParams,
               a_range: tuple[float, float], tol: float = 1e-6, quantity: str = "s_cr") -> MaxResult:
    """Inflation rate ``a`` maximizing ``quantity`` for fixed ``b``, ``c`` and mode."""
    lo, hi = map(float, a_range)

    def objective(a: float) -> float:
        model = dataclasses.replace(model_template, a=a, b=b, c=c)
        return _quantity(model, mode, quantity)

    return maximize(objective, lo, hi, tol)


# --- output -----------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def format_rows(rows: Iterable[dict], columns: Sequence[str], fmt: str = "csv") -> Iterator[str]:
    """Render rows as CSV lines (header first) or JSON lines."""
    if fmt not in FORMATS:
        raise DomainError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        yield buf.getvalue()
        for row in rows:
            buf.seek(0)
            buf.truncate()
            writer.writerow([_fmt(row.get(c)) for c in columns])
            yield buf.getvalue()
    else:
        for row in rows:
            yield json.dumps({c: row.get(c) for c in columns}) + "\n"


def emit(rows: Iterable[dict], columns: Sequence[str], fmt: str = "csv", path: Optional[str] = None) -> int:
    """Write rows to ``path`` (stdout when None or '-'); returns the number of rows with errors."""
    errors = 0

    def counted():
        nonlocal errors
        for row in rows:
            if row.get("error"):
                errors += 1
            yield row

    lines = format_rows(counted(), columns, fmt)
    if path in (None, "-"):
        for line in lines:
            sys.stdout.write(line)
        sys.stdout.flush()
        return errors
    try:
        with open(path, "w", newline="") as fh:
            for line in lines:
                fh.write(line)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return errors
