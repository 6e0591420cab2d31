import dataclasses
import json
import math

import numpy as np
import pytest

from cosmo_entropy.cosmology import Exponential, ModeParams, Tanh
from cosmo_entropy.errors import DomainError, NotUnimodal
from cosmo_entropy.sweep import (
    Grid,
    OutputError,
    SweepSpec,
    emit,
    find_a_max,
    find_m_max,
    format_rows,
    maximize,
    run_sweep,
    sweep_columns,
)
from cosmo_entropy.sweep import _quantity as quantity_at


def test_grid_values():
    assert Grid(1, 2, 3).values() == [1.0, 1.5, 2.0]
    assert Grid(0.5, 0.5, 1).values() == [0.5]
    assert Grid(1, 100, 3, log=True).values() == pytest.approx([1, 10, 100])


@pytest.mark.parametrize("args", [(1, 0, 3), (0, 1, 0), (0, 1, 3, True)])
def test_grid_rejects_bad_input(args):
    with pytest.raises(DomainError):
        Grid(*args)


def test_spec_validation():
    g = Grid(1, 1, 1)
    with pytest.raises(DomainError):
        SweepSpec(Exponential(), g, g, engine="fast")
    with pytest.raises(DomainError):
        SweepSpec(Exponential(), g, g, quantities=("entropy",))
    with pytest.raises(DomainError):
        SweepSpec(Tanh(), g, g, param_overrides=(("c", (1.0,)),))


def test_columns_follow_contract():
    spec = SweepSpec(Exponential(), Grid(1, 1, 1), Grid(1, 1, 1), engine="both")
    assert sweep_columns(spec) == [
        "a", "b", "c", "k", "m", "omega_in", "omega_out", "alpha_sq", "beta_sq",
        "n_cr", "gamma", "s_en", "s_cr", "d", "temperature", "z_squeeze",
        "w_total", "w_adiabatic", "w_friction", "w_en",
        "normalization_defect", "oracle_rel_err", "error",
    ]


def test_two_by_two_is_k_major():
    spec = SweepSpec(Exponential(), Grid(0.5, 1.0, 2), Grid(1.0, 2.0, 2))
    rows = list(run_sweep(spec))
    assert [(r["k"], r["m"]) for r in rows] == [(0.5, 1.0), (0.5, 2.0), (1.0, 1.0), (1.0, 2.0)]


def test_overrides_are_outermost():
    spec = SweepSpec(Exponential(), Grid(1, 2, 2), Grid(1, 1, 1), param_overrides=(("c", (1.0, 0.3)),))
    rows = list(run_sweep(spec))
    assert [(r["c"], r["k"]) for r in rows] == [(1.0, 1.0), (1.0, 2.0), (0.3, 1.0), (0.3, 2.0)]


def test_massless_rows_have_zero_entropy():
    spec = SweepSpec(Exponential(), Grid(0.5, 2.5, 5), Grid(0, 0, 1))
    for row in run_sweep(spec):
        assert row["s_en"] == row["s_cr"] == row["d"] == 0.0


def test_oracle_agreement_small_grid():
    spec = SweepSpec(Exponential(), Grid(0.2, 2.5, 5), Grid(0.2, 2.5, 5), engine="both",
                     quantities=("s_cr",))
    rows = list(run_sweep(spec))
    assert len(rows) == 25
    assert max(r["oracle_rel_err"] for r in rows) <= 1e-5


def test_entropy_rows_satisfy_difference_relation():
    spec = SweepSpec(Exponential(c=0.5), Grid(0.1, 3, 8), Grid(0.1, 3, 8))
    for r in run_sweep(spec):
        assert abs(r["s_en"] - r["s_cr"] - math.log1p(r["n_cr"])) <= 1e-12


def test_row_errors_do_not_abort_sweep():
    spec = SweepSpec(Tanh(), Grid(0, 1, 2), Grid(0, 0, 1))
    rows = list(run_sweep(spec))
    assert rows[0]["error"].startswith("DegenerateInputError")
    assert rows[1]["error"] == ""


def test_bits_units():
    model = Exponential()
    spec = lambda u: SweepSpec(model, Grid(1, 1, 1), Grid(1, 1, 1), units=u)
    nats, bits = next(run_sweep(spec("nats"))), next(run_sweep(spec("bits")))
    assert bits["s_en"] == pytest.approx(nats["s_en"] / math.log(2), rel=1e-15)
    assert bits["temperature"] == nats["temperature"]


def test_parallel_matches_serial():
    spec = SweepSpec(Exponential(), Grid(0.1, 3, 6), Grid(0.1, 3, 6))
    cols = sweep_columns(spec)
    serial = "".join(format_rows(run_sweep(spec), cols))
    parallel = "".join(format_rows(run_sweep(spec, jobs=3), cols))
    assert serial == parallel


def test_empty_rows_give_header_only_csv():
    assert list(format_rows([], ["k", "m"])) == ["k,m\n"]


def test_float_round_trip_and_jsonl():
    x = 0.1 + 0.2
    (header, line) = list(format_rows([{"k": x}], ["k"]))
    assert float(line) == x
    (obj,) = list(format_rows([{"k": x, "error": ""}], ["k", "error"], "jsonl"))
    assert json.loads(obj) == {"k": x, "error": ""}


def test_emit_counts_errors_and_reports_path(tmp_path):
    path = tmp_path / "out.csv"
    assert emit([{"k": 1.0, "error": ""}, {"k": 2.0, "error": "boom"}], ["k", "error"], path=str(path)) == 1
    assert path.read_text() == "k,error\n1,\n2,boom\n"
    bad = tmp_path / "missing" / "out.csv"
    with pytest.raises(OutputError, match="missing"):
        emit([], ["k"], path=str(bad))


# --- argmax ------------------------------------------------------------------

def test_maximize_parabola():
    res = maximize(lambda x: -(x - 1.234) ** 2, 0, 3, 1e-8)
    assert abs(res.x - 1.234) <= 1e-8


def test_maximize_refuses_monotone():
    with pytest.raises(NotUnimodal):
        maximize(lambda x: x, 0, 1, 1e-6)


def test_m_max_matches_dense_scan():
    model = Exponential()
    ms = np.linspace(0.05, 3.0, 10_000)
    scan = [quantity_at(model, ModeParams(1.0, float(m)), "s_cr") for m in ms]
    m_scan = float(ms[int(np.argmax(scan))])
    spacing = float(ms[1] - ms[0])
    res = find_m_max(model, 1.0, (0.05, 3.0), tol=1e-6)
    assert abs(res.x - m_scan) <= spacing
    assert res.value >= max(scan) - 1e-12


def test_m_max_degenerate_range():
    res = find_m_max(Exponential(), 1.0, (0.7, 0.7))
    assert res.x == 0.7


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_m_max_shifts_down_with_c(k):
    hi_c = find_m_max(Exponential(c=1.0), k, (0.05, 3.0))
    lo_c = find_m_max(Exponential(c=0.3), k, (0.05, 3.0))
    assert hi_c.x < lo_c.x


def test_a_max_interior_and_distinct():
    peaks = []
    for v in (1.0, 0.8, 0.5):
        res = find_a_max(Exponential(), b=0.01, c=v, mode=ModeParams(v, v), a_range=(0.2, 20.0))
        assert 0.2 < res.x < 20.0
        for edge in (0.2, 20.0):
            model = dataclasses.replace(Exponential(), a=edge, b=0.01, c=v)
            assert quantity_at(model, ModeParams(v, v), "s_cr") < res.value
        peaks.append(res.x)
    assert len({round(p, 4) for p in peaks}) == 3


def test_a_max_degenerate_range():
    assert find_a_max(Exponential(), 0.01, 1.0, ModeParams(1, 1), (2.0, 2.0)).x == 2.0
