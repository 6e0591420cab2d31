import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosmo_entropy.bogoliubov import BogoliubovResult, exp_model_coeffs, tanh_model_coeffs
from cosmo_entropy.cosmology import Exponential, ModeParams, Tanh
from cosmo_entropy.errors import DomainError
from cosmo_entropy.thermo import (
    bose_einstein,
    creation_entropy,
    density_matrix_spectrum,
    entanglement_entropy,
    entanglement_entropy_from_n,
    entanglement_work,
    full_report,
    spectrum_entropy,
    temperature,
    works,
)


def test_entanglement_entropy_examples():
    assert entanglement_entropy(0.0) == 0.0
    # gamma-form and n-form at n = 1
    assert entanglement_entropy(0.5) == pytest.approx(2 * math.log(2), rel=1e-14)
    assert entanglement_entropy_from_n(1.0) == pytest.approx(math.log(4), rel=1e-14)
    assert entanglement_entropy(0.99) > entanglement_entropy(0.9) > entanglement_entropy(0.5)


def test_entanglement_entropy_from_n_examples():
    assert entanglement_entropy_from_n(0.0) == 0.0
    assert entanglement_entropy_from_n(3.0) == pytest.approx(math.log(256 / 27), rel=1e-14)
    assert entanglement_entropy(0.75) == pytest.approx(math.log(256 / 27), rel=1e-14)


def test_creation_entropy_examples():
    assert creation_entropy(0.0) == 0.0
    assert creation_entropy(1.0) == pytest.approx(math.log(2), rel=1e-15)
    assert 0.99 < creation_entropy(100.0) < 1.0


def test_temperature_examples():
    assert temperature(1.0, math.exp(-1)) == pytest.approx(1.0, rel=1e-15)
    assert temperature(2.0, 0.5) == pytest.approx(2 / math.log(2), rel=1e-15)
    assert temperature(3.0, 0.0) == 0.0
    t = temperature(math.sqrt(2), 0.3)
    assert bose_einstein(math.sqrt(2), t) == pytest.approx(3 / 7, rel=1e-12)


def test_works_examples():
    r2 = math.sqrt(2)
    assert works(r2, r2, 0.5) == pytest.approx((r2 / 2, 0.0, r2 / 2), rel=1e-15)
    assert works(r2, r2, 0.5).w_adiabatic == 0.0
    assert works(r2, 2.0, 0.0) == pytest.approx((2 - r2, 2 - r2, 0.0), rel=1e-15)
    assert works(r2, 2.0, 1.0) == pytest.approx((2 + (2 - r2), 2 - r2, 2.0), rel=1e-15)


def test_entanglement_work_examples():
    assert entanglement_work(1.0, 1.0) == pytest.approx(2.0, rel=1e-14)
    assert entanglement_work(1.0, 1.0) == pytest.approx(temperature(1.0, 0.5) * entanglement_entropy(0.5), rel=1e-14)
    assert entanglement_work(2.0, 0.0) == 0.0
    assert entanglement_work(2.0, 1e-300) < 1e-290
    expected = 2 * (3 + math.log(4) / math.log(4 / 3))
    assert entanglement_work(2.0, 3.0) == pytest.approx(expected, rel=1e-14)
    assert entanglement_work(2.0, 3.0) == pytest.approx(temperature(2.0, 0.75) * entanglement_entropy(0.75), rel=1e-13)


def test_spectrum_examples():
    assert density_matrix_spectrum(0.0, 4) == [1.0, 0.0, 0.0, 0.0, 0.0]
    lam = density_matrix_spectrum(0.5, 3)
    assert lam == [0.5, 0.25, 0.125, 0.0625]
    assert 1 - sum(lam) == 0.0625
    assert abs(spectrum_entropy(density_matrix_spectrum(0.5, 60)) - entanglement_entropy(0.5)) <= 1e-10


@pytest.mark.parametrize("fn,arg", [(entanglement_entropy, 1.0), (entanglement_entropy, -0.1),
                                    (entanglement_entropy_from_n, -1.0), (creation_entropy, -1e-3),
                                    (lambda g: temperature(1.0, g), 1.0), (lambda n: entanglement_work(1.0, n), -1.0),
                                    (lambda g: density_matrix_spectrum(g, 3), 1.5)])
def test_domain_errors(fn, arg):
    with pytest.raises(DomainError):
        fn(arg)


def test_vacuum_report_is_all_zero():
    model, mode = Tanh(0, 1), ModeParams(1, 1)
    rep = full_report(model, mode, tanh_model_coeffs(model, mode))
    for q in ("n_cr", "gamma", "s_en", "s_cr", "d", "temperature", "z_squeeze", "w_friction", "w_en"):
        assert getattr(rep, q) == 0.0


def test_massless_exponential_report():
    rep = full_report(Exponential(), ModeParams(2, 0), BogoliubovResult(1.0, 0.0))
    assert rep.s_en == rep.s_cr == rep.w_total == 0.0


def test_report_identities_exponential():
    model, mode = Exponential(1, 1, 1), ModeParams(1, 1)
    rep = full_report(model, mode, exp_model_coeffs(model, mode))
    assert abs(rep.s_en - rep.s_cr - math.log1p(rep.n_cr)) <= 1e-12
    assert rep.d == math.log1p(rep.n_cr)
    assert abs(rep.w_friction - (rep.w_total - rep.w_adiabatic)) <= 1e-12
    assert rep.w_adiabatic == 0.0
    assert abs(rep.n_cr - rep.gamma / (1 - rep.gamma)) <= 1e-12 * rep.n_cr
    assert math.sinh(rep.z_squeeze) ** 2 == pytest.approx(rep.n_cr, rel=1e-12)


def test_report_tanh_positive_and_below_k0():
    model = Tanh(1, 1)
    rep = full_report(model, ModeParams(1, 1), tanh_model_coeffs(model, ModeParams(1, 1)))
    rep0 = full_report(model, ModeParams(0, 1), tanh_model_coeffs(model, ModeParams(0, 1)))
    assert 0 < rep.s_cr < rep0.s_cr
    assert math.isfinite(rep.temperature) and rep.temperature > 0


ns = st.floats(1e-9, 100.0)
ws = st.floats(0.05, 20.0)


@settings(max_examples=300)
@given(ns)
def test_entropy_forms_agree(n):
    a = entanglement_entropy(n / (1 + n))
    b = entanglement_entropy_from_n(n)
    assert abs(a - b) <= 1e-12 * b


@given(ns)
def test_entropy_decomposition_and_ordering(n):
    s_en, s_cr = entanglement_entropy_from_n(n), creation_entropy(n)
    assert abs(s_en - (s_cr + math.log1p(n))) <= 1e-12 * max(1.0, s_en)
    assert s_en > s_cr > 0


@given(ws, ns)
def test_fluctuation_identity(w, n):
    g = n / (1 + n)
    lhs = creation_entropy(n) * temperature(w, g)
    rhs = works(1.0, w, n).w_friction
    assert abs(lhs - rhs) <= 1e-12 * rhs


@given(ws, ns)
def test_planck_round_trip(w, n):
    g = n / (1 + n)
    assert abs(bose_einstein(w, temperature(w, g)) - n) <= 1e-12 * n


@given(ws, ns)
def test_entanglement_work_is_temperature_times_entropy(w, n):
    g = n / (1 + n)
    ref = temperature(w, g) * entanglement_entropy_from_n(n)
    assert abs(entanglement_work(w, n) - ref) <= 1e-12 * ref


@given(st.floats(0.0, 0.7))
def test_spectrum_oracle_reasonable_gamma(g):
    # truncation large enough that the tail is below double precision
    lam = density_matrix_spectrum(g, 200)
    assert abs(spectrum_entropy(lam) - entanglement_entropy(g)) <= 1e-10
    assert all(x >= y for x, y in zip(lam, lam[1:]))
