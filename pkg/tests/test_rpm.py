"""Riccati coefficients, Hankel determinants and root sequences."""

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from resonance1d.exceptions import NonConvergenceError, SequenceLostError
from resonance1d.model import GaussianDoubleBarrier, free_particle, harmonic_oscillator
from resonance1d.rpm import (ComplexBox, HankelSpec, Parity, RealInterval, ResonanceResult,
                             converge_resonance, find_root, hankel_determinant,
                             hankel_polynomial, hankel_with_derivative, riccati_coefficients,
                             seed_roots, solve, to_mpc, truncate_to_error)

HO = harmonic_oscillator()


def coeffs(p, n=60):
    return p.taylor_coefficients(n)


def test_f0_even_and_odd(dps50):
    v = coeffs(GaussianDoubleBarrier(2, 1), 4)
    eps = mp.mpc("0.7", "-0.1")
    assert riccati_coefficients(v, 0, eps, 2).f[0] == 2 * eps
    assert abs(riccati_coefficients(v, 1, eps, 2).f[0] - 2 * eps / 3) < mp.mpf(10) ** -48


def test_harmonic_ground_state_coefficients(dps50):
    # f(x) = x exactly, so f_0 = 1 and every later coefficient vanishes
    f = riccati_coefficients(coeffs(HO, 10), 0, mp.mpf(1) / 2, 10).f
    assert f[0] == 1
    assert all(c == 0 for c in f[1:])


def test_recurrence_resubstitution(dps50):
    """f(x) built from the coefficients satisfies the Riccati equation as a series."""
    p = GaussianDoubleBarrier("1/2", "0.1")
    v = coeffs(p, 20)
    for s in (0, 1):
        eps = mp.mpc("0.46", "-0.01")
        f = riccati_coefficients(v, s, eps, 20).f
        # f' = 2x(v - eps) ... in coefficient form for f = sum f_j x^(2j+1):
        # (2n+1) f_n = sum f_j f_{n-1-j} - 2 s f_n + 2 (v_n - eps delta_{n0}) ... check directly
        for n in range(1, 20):
            lhs = (2 * n + 2 * s + 1) * f[n]
            rhs = sum(f[j] * f[n - 1 - j] for j in range(n)) - 2 * v[n - 1]
            assert abs(lhs - rhs) < mp.mpf(10) ** -45


def test_riccati_solves_schrodinger_numerically():
    """phi = x^s exp(-int f) solves -phi''/2 + v phi = eps phi near the origin."""
    with mp.workdps(40):
        p = GaussianDoubleBarrier(2, 1)
        v = coeffs(p, 40)
        eps = mp.mpf("0.9")
        for s in (0, 1):
            f = riccati_coefficients(v, s, eps, 40).f
            F = lambda x: sum(c * x ** (2 * j + 2) / (2 * j + 2) for j, c in enumerate(f))
            phi = lambda x: x ** s * mp.exp(-F(x))
            x = mp.mpf("0.4")
            res = -mp.diff(phi, x, 2) / 2 + (p.evaluate(x) - eps) * phi(x)
            assert abs(res) < 1e-20


def test_too_few_coefficients(dps50):
    with pytest.raises(ValueError):
        riccati_coefficients([1, 2], 0, 1, 5)


def test_harmonic_determinant_vanishes(dps50):
    v = coeffs(HO)
    for D in range(2, 8):
        f = riccati_coefficients(v, 0, mp.mpf(1) / 2, HankelSpec(D).highest_index)
        assert hankel_determinant(f, HankelSpec(D)) == 0


def test_two_by_two_expansion(dps50):
    v = coeffs(GaussianDoubleBarrier(5, 1), 10)
    c = riccati_coefficients(v, 1, mp.mpc("1.1", "-0.08"), 4)
    f = c.f
    expected = f[1] * f[3] - f[2] ** 2
    assert abs(hankel_determinant(c, HankelSpec(2)) - expected) < mp.mpf(10) ** -45 * abs(expected)


def test_displacement_shifts_window(dps50):
    v = coeffs(GaussianDoubleBarrier(5, 1), 10)
    c = riccati_coefficients(v, 0, mp.mpf("1.3"), 6)
    f = c.f
    expected = f[2] * f[4] - f[3] ** 2
    assert abs(hankel_determinant(c, HankelSpec(2, 1)) - expected) < mp.mpf(10) ** -45 * abs(expected)


def test_determinant_index_check(dps50):
    c = riccati_coefficients(coeffs(HO), 0, 1, 3)
    with pytest.raises(ValueError):
        hankel_determinant(c, HankelSpec(3))


def test_derivative_matches_finite_difference():
    with mp.workdps(50):
        v = coeffs(HO)
        e = mp.mpf(1) / 2
        spec = HankelSpec(2)
        val, der = hankel_with_derivative(v, 0, e, spec)
        h = mp.mpf(10) ** -25
        plus, _ = hankel_with_derivative(v, 0, e + h, spec)
        minus, _ = hankel_with_derivative(v, 0, e - h, spec)
        fd = (plus - minus) / (2 * h)
        # the root is double at D=2, so both slopes vanish
        assert val == 0
        assert abs(der - fd) <= mp.mpf(10) ** -20


@pytest.mark.parametrize("D", [2, 3, 4, 6])
def test_derivative_finite_difference_complex(D):
    with mp.workdps(50):
        v = coeffs(GaussianDoubleBarrier("1/2", "0.1"))
        e = mp.mpc("1.85", "-0.067")
        val, der = hankel_with_derivative(v, 0, e, HankelSpec(D))
        h = mp.mpf(10) ** -20
        fd = (hankel_with_derivative(v, 0, e + h, HankelSpec(D))[0]
              - hankel_with_derivative(v, 0, e - h, HankelSpec(D))[0]) / (2 * h)
        assert abs(der - fd) <= mp.mpf(10) ** -15 * abs(fd)


def test_free_particle_derivative_symbolic(dps50):
    """Zero potential: f_1 = 4 eps^2/3, f_2 = 16 eps^3/15, f_3 = (2 f_0 f_2 + f_1^2)/7."""
    eps = mp.mpf("0.37")
    f0 = 2 * eps
    f1 = f0 ** 2 / 3
    f2 = 2 * f0 * f1 / 5
    f3 = (2 * f0 * f2 + f1 ** 2) / 7
    H = f1 * f3 - f2 ** 2
    # every f_n is c_n eps^(n+1), so H is homogeneous of degree 6
    val, der = hankel_with_derivative(coeffs(free_particle(), 10), 0, eps, HankelSpec(2))
    assert abs(val - H) < mp.mpf(10) ** -45
    assert abs(der - 6 * H / eps) < mp.mpf(10) ** -45


@settings(max_examples=25, deadline=None)
@given(re=st.floats(0.05, 3), im=st.floats(-2, 0), s=st.sampled_from([0, 1]),
       D=st.integers(2, 5))
def test_conjugate_symmetry(re, im, s, D):
    with mp.workdps(30):
        v = coeffs(GaussianDoubleBarrier(2, 1), 20)
        e = mp.mpc(re, im)
        a, da = hankel_with_derivative(v, s, e, HankelSpec(D))
        b, db = hankel_with_derivative(v, s, mp.conj(e), HankelSpec(D))
        tol = mp.mpf(10) ** -25
        assert abs(mp.conj(a) - b) <= tol * max(1, abs(a))
        assert abs(mp.conj(da) - db) <= tol * max(1, abs(da))


def test_find_root_harmonic(dps50):
    z = find_root(coeffs(HO), 0, HankelSpec(3), mp.mpf("0.4"))
    assert abs(z - mp.mpf(1) / 2) < mp.mpf(10) ** -38


def test_find_root_odd_harmonic(dps50):
    z = find_root(coeffs(HO), 1, HankelSpec(3), mp.mpf("1.3"))
    assert abs(z - mp.mpf(3) / 2) < mp.mpf(10) ** -38


def test_find_root_non_convergence_carries_iterate(dps50):
    with pytest.raises(NonConvergenceError) as err:
        find_root(coeffs(GaussianDoubleBarrier(2, 1)), 0, HankelSpec(6), mp.mpc(0.5, -0.2),
                  max_iter=1)
    assert err.value.last is not None


def test_find_root_rejects_bad_tol(dps50):
    with pytest.raises(ValueError):
        find_root(coeffs(HO), 0, HankelSpec(2), 0.4, tol=0)


def test_seed_roots_harmonic(dps50):
    # H_2 has a double root at 1/2, which double precision splits by ~1e-8
    seeds = seed_roots(coeffs(HO), 0, 2, search=RealInterval(0, 3))
    assert any(abs(z - 0.5) < 1e-6 for z in seeds)
    assert all(z.imag == 0 for z in seeds)


def test_seed_roots_free_particle(dps50):
    poly = hankel_polynomial(coeffs(free_particle(), 10), 0, HankelSpec(2))
    assert all(c == 0 for c in poly[:6])
    assert poly[6] != 0
    assert seed_roots(coeffs(free_particle(), 10), 0, 2, search=ComplexBox(0.1, 3, -2, 0)) == []


def test_seed_roots_dimension_limit(dps50):
    with pytest.raises(ValueError):
        seed_roots(coeffs(HO), 0, 5)


def test_seed_roots_near_table_entries():
    with mp.workdps(40):
        v = coeffs(GaussianDoubleBarrier("1/2", "0.1"))
        seeds = seed_roots(v, 0, 4, search=ComplexBox(0, 3, -2, 0))
        seeds += seed_roots(v, 1, 4, search=ComplexBox(0, 3, -2, 0))
    # each validated by convergence to a known resonance
    targets = [mp.mpc("0.46014727653933356360", "-9.62e-7"), mp.mpc("1.2804203534682821470", "-1.67e-3")]
    for t in targets:
        assert min(abs(complex(t) - z) for z in seeds) < 0.15


def test_converge_harmonic_odd_every_D():
    with mp.workdps(50):
        res = converge_resonance(coeffs(HO), 1, D_range=(2, 8), seed=mp.mpf("1.3"),
                                 capture_radius=0.5)
    assert res.is_bound
    assert all(abs(z - mp.mpf(3) / 2) < mp.mpf(10) ** -35 for _, z in res.sequence)


def test_converge_rejects_bad_range(dps50):
    with pytest.raises(ValueError):
        converge_resonance(coeffs(HO), 0, D_range=(3, 3), seed=0.5)
    with pytest.raises(ValueError):
        converge_resonance(coeffs(HO), 0, D_range=(2, 5))


def test_sequence_lost_far_from_any_root(dps50):
    with pytest.raises(SequenceLostError):
        converge_resonance(coeffs(GaussianDoubleBarrier(2, 1)), 0, D_range=(2, 6),
                           seed=mp.mpc(40, -30), capture_radius=0.01)


def test_table2_first_row_short_run():
    res = solve(GaussianDoubleBarrier(2, 1), Parity.EVEN, "0.56-0.16j", D_max=12, dps=40)
    assert abs(res.epsilon_R - mp.mpf("0.55937118458252732995")) < 1e-8
    assert res.gamma > 0 and res.epsilon_I < 0
    with mp.workdps(40):
        assert abs(res.error_at(res.D_final) - res.error_estimate) < 1e-30


def test_truncate_to_error():
    with mp.workdps(30):
        assert truncate_to_error(mp.mpf("1.23456789"), mp.mpf("1e-4")) == "1.2345"
        assert truncate_to_error(mp.mpf("-0.00012345"), mp.mpf("1e-6")) == "-0.000123"
        assert truncate_to_error(0, 1e-3) == "0"


def test_to_mpc_parsing():
    with mp.workdps(30):
        assert to_mpc("0.46-1e-6j") == mp.mpc("0.46", "-1e-6")
        assert to_mpc((1.5, -0.25)) == mp.mpc(1.5, -0.25)
        assert to_mpc(0.1) == mp.mpf("0.1")
