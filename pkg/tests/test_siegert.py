"""Wavefunction series, transmission states and the Siegert-approximation width."""

import math

import mpmath as mp
import numpy as np
import pytest

from resonance1d.exceptions import TruncationError
from resonance1d.model import GaussianDoubleBarrier, free_particle, harmonic_oscillator
from resonance1d.siegert import (SERIES_TAIL_RATIO, evaluate_wave, localization_ratio,
                                 sa_width, series_sample, siegert_state, simpson,
                                 transmission_state, wavefunction_series)

T1 = GaussianDoubleBarrier("1/2", "0.1")
T1_EPS = mp.mpc("0.46014727653933356360", "-9.6203883198201929683e-7")


def test_first_coefficient_is_minus_eps(dps50):
    ser = wavefunction_series(T1.taylor_coefficients(5), 0, mp.mpc("0.7", "-0.2"), 5)
    assert ser.c[0] == 1
    assert ser.c[1] == -mp.mpc("0.7", "-0.2")


def test_harmonic_series_is_gaussian(dps50):
    ser = wavefunction_series(harmonic_oscillator().taylor_coefficients(20), 0, mp.mpf(1) / 2, 20)
    for j, c in enumerate(ser.c):
        assert abs(c - (-mp.mpf(1) / 2) ** j / mp.factorial(j)) < mp.mpf(10) ** -45


def test_odd_series_is_odd(dps50):
    ser = wavefunction_series(T1.taylor_coefficients(10), 1, mp.mpc("1.28", "-0.0017"), 10)
    assert evaluate_wave(ser, 0) == 0
    x = mp.mpf("0.8")
    assert abs(evaluate_wave(ser, -x) + evaluate_wave(ser, x)) < mp.mpf(10) ** -45


def test_even_series_at_origin(dps50):
    ser = wavefunction_series(T1.taylor_coefficients(10), 0, T1_EPS, 10)
    assert evaluate_wave(ser, 0) == 1


@pytest.mark.parametrize("s", [0, 1])
def test_recurrence_resubstitution(dps50, s):
    v = T1.taylor_coefficients(24)
    eps = mp.mpc("0.9", "-0.3")
    ser = wavefunction_series(v, s, eps, 24)
    vv = [mp.mpf(0)] + list(v)
    for j in range(24):
        lhs = ser.c[j + 1] * (2 * j + s + 1) * (2 * j + s + 2) / 2
        rhs = sum(vv[k] * ser.c[j - k] for k in range(j + 1)) - eps * ser.c[j]
        assert abs(lhs - rhs) < mp.mpf(10) ** -45 * max(1, abs(rhs))


def test_validity_radius_rule(dps50):
    ser = wavefunction_series(T1.taylor_coefficients(24), 0, T1_EPS, 24)
    r = ser.validity_radius
    mags = lambda x: [abs(complex(c)) * x ** (2 * j) for j, c in enumerate(ser.c)]
    inside, outside = mags(0.999 * r), mags(1.001 * r)
    assert inside[-1] / max(inside[:-1]) < SERIES_TAIL_RATIO
    assert outside[-1] / max(outside[:-1]) >= SERIES_TAIL_RATIO
    with pytest.raises(TruncationError):
        evaluate_wave(ser, 1.01 * r)


def test_series_needs_positive_order(dps50):
    with pytest.raises(ValueError):
        wavefunction_series(T1.taylor_coefficients(3), 0, 1, 0)


def test_transmission_state_free_cosine():
    st = transmission_state(free_particle(), 0, 0.5, a=4.0)
    assert np.max(np.abs(st.phi.real - np.cos(st.x))) < 1e-10
    assert np.max(np.abs(st.phi.imag)) == 0


def test_transmission_state_harmonic():
    st = transmission_state(harmonic_oscillator(), 0, 0.5, a=3.0)
    assert np.max(np.abs(st.phi.real - np.exp(-st.x ** 2 / 2))) < 1e-10


def test_transmission_state_odd_start():
    st = transmission_state(free_particle(), 1, 0.5, a=2.0)
    assert np.max(np.abs(st.phi.real - np.sin(st.x))) < 1e-10


def test_transmission_state_localized_for_high_barrier():
    p = GaussianDoubleBarrier(15, 1)
    st = transmission_state(p, 0, 2.3042519)
    inner = np.max(np.abs(st.phi[st.x < 1.0]))
    outer = np.max(np.abs(st.phi[st.x > 3.0]))
    assert inner > 3 * outer


@pytest.mark.parametrize("p, eps, s", [
    (GaussianDoubleBarrier("1/2", "0.1"), 0.46014727676998596, 0),
    (GaussianDoubleBarrier("1/2", "0.1"), 1.2804203534682821, 1),
    (GaussianDoubleBarrier(2, 1), 0.62752, 0),
    (GaussianDoubleBarrier(15, 1), 2.30434, 0),
], ids=["v0=0.5-even", "v0=0.5-odd", "v0=2", "v0=15"])
def test_series_ode_agreement(p, eps, s):
    """Series and integrator agree to 1e-8 relative on |x| <= min(x_M, b)."""
    with mp.workdps(40):
        ser = wavefunction_series(p.taylor_coefficients(24), s, eps, 24)
    r = min(ser.validity_radius, float(p.barrier_geometry().b))
    xs = np.linspace(0, r, 200)[1:]
    ode = transmission_state(p, s, eps).interpolant(xs)[0]
    series = series_sample(ser, xs).phi.real
    rel = np.max(np.abs(series - ode) / np.abs(ode))
    print(f"x_M={ser.validity_radius:.4f} b={float(p.barrier_geometry().b):.4f} max rel={rel:.2e}")
    assert rel < 1e-8


def test_simpson_exact_for_cubic():
    assert simpson(lambda x: x ** 3 - x, 0, 2) == pytest.approx(2.0, rel=1e-14)
    assert simpson(np.sin, 0, math.pi) == pytest.approx(2.0, rel=1e-10)


def test_sa_width_report_fields():
    rep = sa_width(GaussianDoubleBarrier(10, 1), 0, bracket=(1.7, 1.9))
    d = rep.as_dict()
    for key in ("gamma_SA", "epsilon_T_used", "a_used", "b_used", "norm_integral",
                "boundary_density"):
        assert d[key] > 0
    assert rep.energy_source == "peak"
    assert rep.k_T == pytest.approx(math.sqrt(2 * rep.epsilon_T_used))
    assert rep.gamma_SA == pytest.approx(rep.k_T * rep.boundary_density / rep.norm_integral)


def test_sa_width_falls_back_to_epsilon_R():
    rep = sa_width(GaussianDoubleBarrier(10, 1), 0, bracket=(1.0, 1.2), epsilon_R=1.78)
    assert rep.energy_source == "epsilon_R" and rep.epsilon_T_used == 1.78
    with pytest.raises(ValueError):
        sa_width(GaussianDoubleBarrier(10, 1), 0)


def test_siegert_state_matches_series_inside_radius():
    with mp.workdps(40):
        st = siegert_state(T1, 0, T1_EPS, n_grid=101)
        ser = wavefunction_series(T1.taylor_coefficients(24), 0, T1_EPS, 24)
        x = 1.5
        assert abs(st.interpolant(x)[0, 0] - complex(evaluate_wave(ser, x))) < 1e-12


def test_wavefunction_csv_header():
    with mp.workdps(30):
        st = siegert_state(GaussianDoubleBarrier(2, 1), 0, mp.mpc("0.559", "-0.158"), n_grid=5)
    lines = st.to_csv().splitlines()
    assert lines[0] == "x,re_phi,im_phi,abs2" and len(lines) == 6
    x, re, im, a2 = map(float, lines[2].split(","))
    assert a2 == pytest.approx(re * re + im * im, rel=1e-14)


def test_localization_requires_exterior():
    st = transmission_state(free_particle(), 0, 0.5, a=2.0)
    with pytest.raises(ValueError):
        localization_ratio(st, 3.0)
