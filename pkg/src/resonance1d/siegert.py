"""
Wavefunctions at resonance and the Siegert-approximation width.

Two representations of an even or odd state are provided:

* the Taylor series phi(x) = sum_j c_j x^(2j+s) with c_0 = 1, usable at a
  complex (Siegert) energy but only inside a finite radius;
* the real-energy ODE solution integrated outward from the origin, used for
  the transmission state at eps_T.

The Siegert approximation estimates the width from the transmission state
alone: Gamma = k_T |phi_T(a)|^2 / int_0^b |phi_T|^2 dx.  Outside the
potential the parity solution is a standing wave N cos(kx + delta); the
forward-moving-only state whose parity component it is has |phi_T(a)| = N,
so |phi_T(a)|^2 is taken as phi(a)^2 + (phi'(a)/k)^2.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp

from .exceptions import BracketError, DegenerateStateError, IntegrationError, TruncationError
from .model import Potential
from .rpm import Parity
from .scattering import _integrate, _segments, find_transmission_peak, matching_radius

__all__ = [
    "WaveSeries",
    "WaveSample",
    "SAWidthReport",
    "wavefunction_series",
    "evaluate_wave",
    "transmission_state",
    "sa_width",
    "simpson",
    "siegert_state",
    "localization_ratio",
    "series_sample",
]

#: a series is trusted while |last term| / max|earlier terms| stays below this
SERIES_TAIL_RATIO = 1e-6


@dataclass(frozen=True)
class WaveSeries:
    """Truncated Taylor series of an even/odd state about the origin."""

    parity: Parity
    epsilon: mp.mpc
    c: tuple
    validity_radius: float

    @property
    def M(self) -> int:
        return len(self.c) - 1

    def __call__(self, x):
        return evaluate_wave(self, x)


@dataclass(frozen=True)
class WaveSample:
    """phi and phi' sampled on a grid at one energy."""

    x: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    epsilon: complex
    parity: Parity
    interpolant: Callable | None = field(default=None, repr=False, compare=False)

    @property
    def abs2(self) -> np.ndarray:
        return np.abs(self.phi) ** 2

    def to_csv(self, path=None) -> str:
        """CSV with header ``x,re_phi,im_phi,abs2``."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "re_phi", "im_phi", "abs2"])
        for x, p in zip(self.x, self.phi):
            p = complex(p)
            writer.writerow([f"{x:.16e}", f"{p.real:.16e}", f"{p.imag:.16e}", f"{abs(p) ** 2:.16e}"])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


@dataclass(frozen=True)
class SAWidthReport:
    gamma_SA: float
    epsilon_T_used: float
    a_used: float
    b_used: float
    norm_integral: float
    boundary_density: float
    k_T: float
    energy_source: str = "peak"

    def as_dict(self) -> dict:
        return {
            "gamma_SA": self.gamma_SA,
            "epsilon_T_used": self.epsilon_T_used,
            "a_used": self.a_used,
            "b_used": self.b_used,
            "norm_integral": self.norm_integral,
            "boundary_density": self.boundary_density,
            "k_T": self.k_T,
            "energy_source": self.energy_source,
        }


def _term_ratio(c: Sequence, x: float) -> float:
    z = x * x
    mags = [abs(complex(cj)) * z ** j for j, cj in enumerate(c)]
    head = max(mags[:-1])
    return mags[-1] / head if head > 0 else math.inf


def _series_radius(c: Sequence, threshold: float = SERIES_TAIL_RATIO) -> float:
    if abs(complex(c[-1])) == 0:
        return math.inf
    lo, hi = 0.0, 1.0
    while _term_ratio(c, hi) < threshold:
        lo, hi = hi, 2 * hi
        if hi > 1e6:
            return math.inf
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _term_ratio(c, mid) < threshold:
            lo = mid
        else:
            hi = mid
    return lo


def wavefunction_series(v_coeffs: Sequence, parity, epsilon, M: int = 24) -> WaveSeries:
    """Coefficients c_0..c_M of phi(x) = sum_j c_j x^(2j+s), c_0 = 1.

    c_{j+1} = 2 / ((2j+s+1)(2j+s+2)) * (sum_{k<=j} v_k c_{j-k} - eps c_j),
    with v_0 = 0.  ``v_coeffs`` holds v_1..v_M at working precision.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    if len(v_coeffs) < M:
        raise ValueError(f"need v_1..v_{M}, got {len(v_coeffs)} coefficients")
    s = int(Parity(parity))
    eps = mp.mpc(epsilon)
    c = [mp.mpc(1)]
    for j in range(M):
        acc = -eps * c[j]
        for k in range(1, j + 1):
            acc += v_coeffs[k - 1] * c[j - k]
        c.append(2 * acc / ((2 * j + s + 1) * (2 * j + s + 2)))
    return WaveSeries(parity=Parity(s), epsilon=eps, c=tuple(c),
                      validity_radius=_series_radius(c))


def evaluate_wave(series: WaveSeries, x):
    """x^s * sum_j c_j x^(2j); raises outside the validity radius."""
    if abs(x) > series.validity_radius:
        raise TruncationError(
            f"|x|={float(abs(x)):.6g} beyond series radius {series.validity_radius:.6g}")
    x = mp.mpf(x) if not isinstance(x, (mp.mpf, mp.mpc)) else x
    z = x * x
    total = mp.mpc(0)
    for cj in reversed(series.c):
        total = total * z + cj
    if series.parity == Parity.ODD:
        total *= x
    return total


def series_sample(series: WaveSeries, xs) -> WaveSample:
    """Evaluate a series (and its derivative) on a grid of x values."""
    s = int(series.parity)
    dc = [(2 * j + s) * cj for j, cj in enumerate(series.c)]
    phi, dphi = [], []
    for x in xs:
        phi.append(complex(evaluate_wave(series, x)))
        xm = mp.mpf(float(x))
        # d/dx sum c_j x^(2j+s) = sum (2j+s) c_j x^(2j+s-1)
        acc = mp.mpc(0)
        for j in range(len(dc) - 1, -1, -1):
            acc = acc * xm * xm + dc[j]
        dphi.append(complex(acc * xm ** (s - 1)) if (s == 1 or xm != 0) else 0j)
    return WaveSample(x=np.asarray(xs, dtype=float), phi=np.array(phi), dphi=np.array(dphi),
                      epsilon=complex(series.epsilon), parity=series.parity)


def transmission_state(p: Potential, parity, epsilon_T: float, a: float | None = None,
                       n_grid: int = 2001, rtol: float = 1e-12) -> WaveSample:
    """Real parity solution at ``epsilon_T`` from the origin out to ``a``.

    Even states start from phi(0) = 1, phi'(0) = 0; odd ones from
    phi(0) = 0, phi'(0) = 1.
    """
    s = int(Parity(parity))
    if a is None:
        a = matching_radius(p)
    y0 = [1.0, 0.0, 0.0, 0.0] if s == 0 else [0.0, 0.0, 1.0, 0.0]
    _, pieces = _integrate(p, float(epsilon_T), y0, 0.0, float(a), rtol, 1e-14, dense=True)

    def interp(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty((4, x.size))
        for i, xi in enumerate(x):
            for sol in pieces:
                t0, t1 = sol.t[0], sol.t[-1]
                if t0 - 1e-12 <= xi <= t1 + 1e-12:
                    out[:, i] = sol.sol(xi)
                    break
            else:
                raise ValueError(f"x={xi} outside [0, {a}]")
        return out

    xs = np.linspace(0.0, float(a), n_grid)
    y = interp(xs)
    return WaveSample(x=xs, phi=y[0] + 1j * y[1], dphi=y[2] + 1j * y[3],
                      epsilon=complex(epsilon_T), parity=Parity(s), interpolant=interp)


def simpson(func: Callable, lo: float, hi: float, rtol: float = 1e-8,
            n_start: int = 64, n_max: int = 1 << 16) -> float:
    """Composite Simpson rule, doubling the panel count until the
    Richardson error estimate |S_2n - S_n| / 15 is below ``rtol * |S_2n|``."""
    if hi == lo:
        return 0.0

    def rule(n):
        x = np.linspace(lo, hi, n + 1)
        y = np.asarray(func(x), dtype=float)
        h = (hi - lo) / n
        return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())

    n = n_start
    prev = rule(n)
    while n < n_max:
        n *= 2
        cur = rule(n)
        if abs(cur - prev) / 15 <= rtol * abs(cur):
            return float(cur + (cur - prev) / 15)
        prev = cur
    raise ArithmeticError(f"Simpson rule did not reach rtol={rtol} with {n_max} panels")


def sa_width(p: Potential, parity, epsilon_T: float | None = None, *,
             bracket=None, epsilon_R: float | None = None,
             a: float | None = None) -> SAWidthReport:
    """Siegert-approximation width Gamma = k_T |phi_T(a)|^2 / int_0^b |phi_T|^2.

    The energy is ``epsilon_T`` if given; otherwise the transmission peak is
    searched in ``bracket`` and, if that fails, ``epsilon_R`` is used.
    """
    source = "given"
    if epsilon_T is None:
        if bracket is not None:
            try:
                epsilon_T = find_transmission_peak(p, bracket)
                source = "peak"
            except BracketError:
                if epsilon_R is None:
                    raise
        if epsilon_T is None:
            if epsilon_R is None:
                raise ValueError("sa_width needs epsilon_T, a bracket or epsilon_R")
            epsilon_T, source = float(epsilon_R), "epsilon_R"
    epsilon_T = float(epsilon_T)
    if a is None:
        a = matching_radius(p)
    geom = p.barrier_geometry()
    b = float(geom.b)
    k_T = math.sqrt(2.0 * (epsilon_T - float(p.asymptote())))
    state = transmission_state(p, parity, epsilon_T, a, n_grid=3)
    norm = simpson(lambda x: np.abs(_phi(state, x)) ** 2, 0.0, b)
    if not norm > 1e-300:
        raise DegenerateStateError("norm integral vanishes")
    y_a = state.interpolant(a)[:, 0]
    phi_a = complex(y_a[0], y_a[1])
    dphi_a = complex(y_a[2], y_a[3])
    density = abs(phi_a) ** 2 + abs(dphi_a / k_T) ** 2
    gamma = k_T * density / norm
    return SAWidthReport(gamma_SA=gamma, epsilon_T_used=epsilon_T, a_used=float(a), b_used=b,
                         norm_integral=norm, boundary_density=density, k_T=k_T,
                         energy_source=source)


def _phi(state: WaveSample, x):
    y = state.interpolant(x)
    return y[0] + 1j * y[1]


def siegert_state(p: Potential, parity, epsilon, a: float | None = None, M: int = 24,
                  n_grid: int = 2001, rtol: float = 1e-12) -> WaveSample:
    """Siegert state at complex ``epsilon`` on [0, a].

    The order-M Taylor series is used up to its validity radius; from there
    the (complex) Schrodinger equation is integrated outward, started from
    the series value and slope.
    """
    s = int(Parity(parity))
    if a is None:
        a = matching_radius(p)
    a = float(a)
    v_coeffs = p.taylor_coefficients(M)
    series = wavefunction_series(v_coeffs, s, epsilon, M)
    x0 = min(series.validity_radius, a)
    head = series_sample(series, [x0])
    eps = complex(series.epsilon)
    v = p.scalar_function()

    def rhs(x, y):
        return [y[1], 2.0 * (v(x) - eps) * y[0]]

    pieces = []
    if a > x0:
        y = np.array([head.phi[0], head.dphi[0]], dtype=complex)
        for lo, hi in _segments(p, x0, a):
            sol = solve_ivp(rhs, (lo, hi), y, method="DOP853", rtol=rtol, atol=1e-14,
                            dense_output=True)
            if sol.status != 0:
                raise IntegrationError(f"integration failed on [{lo:g}, {hi:g}]: {sol.message}")
            y = sol.y[:, -1]
            pieces.append(sol)

    def interp(xs):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        out = np.empty((2, xs.size), dtype=complex)
        for i, xi in enumerate(np.abs(xs)):
            if xi <= x0:
                w = series_sample(series, [xi])
                out[:, i] = w.phi[0], w.dphi[0]
                continue
            for sol in pieces:
                if sol.t[0] - 1e-12 <= xi <= sol.t[-1] + 1e-12:
                    out[:, i] = sol.sol(xi)
                    break
            else:
                raise ValueError(f"x={xi} outside [0, {a}]")
        return out

    xs = np.linspace(0.0, a, n_grid)
    y = interp(xs)
    return WaveSample(x=xs, phi=y[0], dphi=y[1], epsilon=eps, parity=Parity(s),
                      interpolant=interp)


def localization_ratio(state: WaveSample, b: float) -> float:
    """int_b^a |phi|^2 / int_0^b |phi|^2 for a state sampled on [0, a]."""
    a = float(state.x[-1])
    if not a > b:
        raise ValueError(f"state ends at {a}, inside b={b}")

    def dens(x):
        return np.abs(state.interpolant(x)[0]) ** 2

    inner = simpson(dens, 0.0, b, rtol=1e-8)
    outside = simpson(dens, b, a, rtol=1e-6)
    return outside / inner
