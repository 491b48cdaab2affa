"""
Transmission through a symmetric potential by backward ODE integration.

With the particle incident from the left the stationary state is

    phi(x) = A e^{ikx} + B e^{-ikx}     (x <= -a)
    phi(x) = C e^{ikx}                  (x >= +a)

Fixing C = 1 at x = +a and integrating -phi''/2 + v phi = eps phi down to
x = -a gives phi(-a) and phi'(-a), from which A and B follow by projecting
on the two plane waves.  T = 1/|A|^2 and R = |B|^2/|A|^2; the constant
Wronskian of a real-energy solution guarantees T + R = 1, which is used as
a running accuracy check.

This part runs in double precision with scipy's DOP853 integrator.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

from .exceptions import (BracketError, ClosedChannelError, IntegrationError, NoBarrierError,
                         UnitarityError)
from .model import Potential

__all__ = [
    "AmplitudeSet",
    "TransmissionPoint",
    "TransmissionCurve",
    "BWParams",
    "matching_radius",
    "integrate_outgoing",
    "decompose_amplitudes",
    "transmission",
    "scan_transmission",
    "peak_brackets",
    "find_transmission_peak",
    "bw_profile",
    "bw_deviation",
    "RTOL",
    "UNITARITY_LIMIT",
]

#: relative tolerance of the integrator
RTOL = 1e-12
ATOL = 1e-14
#: residual |T + R - 1| above which a point is rejected outright
UNITARITY_LIMIT = 1e-6


@dataclass(frozen=True)
class AmplitudeSet:
    """Plane-wave amplitudes on both sides; flux conservation is |A|^2 - |B|^2 = |C|^2."""

    A: complex
    B: complex
    C: complex
    k: float

    @property
    def flux_residual(self) -> float:
        return abs(abs(self.A) ** 2 - abs(self.B) ** 2 - abs(self.C) ** 2)


@dataclass(frozen=True)
class TransmissionPoint:
    epsilon: float
    T: float
    R: float
    unitarity_residual: float


@dataclass(frozen=True)
class TransmissionCurve:
    """Transmission sampled on an ascending energy grid."""

    points: tuple

    @property
    def epsilon(self) -> np.ndarray:
        return np.array([p.epsilon for p in self.points])

    @property
    def T(self) -> np.ndarray:
        return np.array([p.T for p in self.points])

    @property
    def R(self) -> np.ndarray:
        return np.array([p.R for p in self.points])

    @property
    def residual(self) -> np.ndarray:
        return np.array([p.unitarity_residual for p in self.points])

    def to_csv(self, path=None) -> str:
        """CSV with header ``epsilon,T,R,residual``; 17 significant digits."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["epsilon", "T", "R", "residual"])
        for p in self.points:
            writer.writerow([_fmt(p.epsilon), _fmt(p.T), _fmt(p.R), _fmt(p.unitarity_residual)])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source) -> "TransmissionCurve":
        text = Path(source).read_text() if isinstance(source, (str, Path)) and "\n" not in str(source) \
            else str(source)
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls(tuple(TransmissionPoint(float(r["epsilon"]), float(r["T"]), float(r["R"]),
                                           float(r["residual"])) for r in rows))


def _fmt(x: float) -> str:
    return f"{x:.16e}"


@dataclass(frozen=True)
class BWParams:
    """Resonance position and the magnitude of its imaginary part."""

    epsilon_R: float
    epsilon_I: float

    def __post_init__(self):
        object.__setattr__(self, "epsilon_R", float(self.epsilon_R))
        object.__setattr__(self, "epsilon_I", abs(float(self.epsilon_I)))
        if self.epsilon_I == 0:
            raise ValueError("Breit-Wigner profile needs a nonzero width")

    @property
    def gamma(self) -> float:
        return 2 * self.epsilon_I


def matching_radius(p: Potential, rel_tol: float = 1e-12) -> float:
    """Radius a beyond the barrier where |v(a) - v(oo)| < rel_tol * v_b.

    Capped at 12 scale lengths (12/sqrt(lambda) for the Gaussian forms).
    Potentials of compact support use their support edge.
    """
    support = p.support_radius()
    if support is not None:
        return float(support) if support > 0 else 1.0
    geom = p.barrier_geometry()
    b, v_b = float(geom.b), float(geom.v_b)
    asym = float(p.asymptote())
    v = p.scalar_function()
    cap = 12.0 * p.scale_length()
    target = rel_tol * abs(v_b)

    def small(x):
        return abs(v(x) - asym) < target

    if small(cap) is False:
        return cap
    lo, hi = b, cap
    # the tail is monotone beyond the barrier top for the supported potentials
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if small(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _channel_k(p: Potential, epsilon: float) -> float:
    kinetic = epsilon - float(p.asymptote())
    if not kinetic > 0:
        raise ClosedChannelError(
            f"eps={epsilon} is not above the asymptote {float(p.asymptote())}")
    return math.sqrt(2.0 * kinetic)


def _rhs(v, epsilon):
    def f(x, y):
        c = 2.0 * (v(x) - epsilon)
        return [y[2], y[3], c * y[0], c * y[1]]
    return f


def _segments(p: Potential, start: float, stop: float) -> list:
    """Split [start, stop] (either orientation) at the potential's breakpoints."""
    cuts = set()
    for bp in p.breakpoints():
        cuts.update((bp, -bp))
    lo, hi = min(start, stop), max(start, stop)
    inner = sorted(c for c in cuts if lo < c < hi)
    if start > stop:
        inner = inner[::-1]
    nodes = [start, *inner, stop]
    return list(zip(nodes[:-1], nodes[1:]))


def _integrate(p: Potential, epsilon: float, y0, start: float, stop: float,
               rtol: float, atol: float, dense: bool = False):
    v = p.scalar_function()
    fun = _rhs(v, epsilon)
    y = np.asarray(y0, dtype=float)
    pieces = []
    for x0, x1 in _segments(p, start, stop):
        sol = solve_ivp(fun, (x0, x1), y, method="DOP853", rtol=rtol, atol=atol,
                        dense_output=dense)
        if sol.status != 0:
            raise IntegrationError(f"integration failed on [{x0:g}, {x1:g}]: {sol.message}")
        y = sol.y[:, -1]
        pieces.append(sol)
    return y, pieces


def integrate_outgoing(p: Potential, epsilon: float, a: float | None = None,
                       rtol: float = RTOL, atol: float = ATOL):
    """Start from phi = e^{ika}, phi' = ik e^{ika} at x = a and integrate to x = -a.

    Returns ``(phi(-a), phi'(-a))`` as Python complex numbers.
    """
    k = _channel_k(p, epsilon)
    if a is None:
        a = matching_radius(p)
    start = cmath.exp(1j * k * a)
    y0 = [start.real, start.imag, (1j * k * start).real, (1j * k * start).imag]
    y, _ = _integrate(p, epsilon, y0, a, -a, rtol, atol)
    return complex(y[0], y[1]), complex(y[2], y[3])


def decompose_amplitudes(phi: complex, dphi: complex, k: float, a: float) -> AmplitudeSet:
    """Split phi(-a) into A e^{ikx} + B e^{-ikx}, with C = 1 on the right."""
    if not k > 0:
        raise ValueError("k must be positive")
    ratio = dphi / (1j * k)
    A = cmath.exp(1j * k * a) * (phi + ratio) / 2
    B = cmath.exp(-1j * k * a) * (phi - ratio) / 2
    return AmplitudeSet(A=A, B=B, C=1.0 + 0j, k=k)


def transmission(p: Potential, epsilon: float, a: float | None = None,
                 rtol: float = RTOL, atol: float = ATOL) -> TransmissionPoint:
    """T(eps) and R(eps) with their unitarity residual."""
    if a is None:
        a = matching_radius(p)
    k = _channel_k(p, epsilon)
    phi, dphi = integrate_outgoing(p, epsilon, a, rtol=rtol, atol=atol)
    amp = decompose_amplitudes(phi, dphi, k, a)
    norm = abs(amp.A) ** 2
    T = 1.0 / norm
    R = abs(amp.B) ** 2 / norm
    residual = abs(T + R - 1.0)
    if residual > UNITARITY_LIMIT:
        raise UnitarityError(f"|T + R - 1| = {residual:.3e} at eps={epsilon}")
    return TransmissionPoint(epsilon=float(epsilon), T=T, R=R, unitarity_residual=residual)


def scan_transmission(p: Potential, epsilon_range, n_points: int,
                      a: float | None = None) -> TransmissionCurve:
    """Sample T on ``n_points`` evenly spaced energies in ``epsilon_range``."""
    lo, hi = map(float, epsilon_range)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if not hi > lo:
        raise ValueError("empty energy range")
    if a is None:
        a = matching_radius(p)
    grid = np.linspace(lo, hi, n_points)
    return TransmissionCurve(tuple(transmission(p, float(e), a) for e in grid))


def peak_brackets(curve: TransmissionCurve) -> list:
    """(lo, hi) energy brackets around every interior local maximum of a scan."""
    e, T = curve.epsilon, curve.T
    out = []
    for i in range(1, len(T) - 1):
        if T[i] > T[i - 1] and T[i] >= T[i + 1]:
            out.append((float(e[i - 1]), float(e[i + 1])))
    return out


def find_transmission_peak(p: Potential, bracket, tol: float = 1e-10,
                           a: float | None = None, symmetric: bool = True) -> float:
    """Energy of the maximum of T inside ``bracket``.

    For a symmetric potential the maximum must reach T = 1; a located
    maximum below 1 - 1e-6 means the bracket did not isolate the peak.
    """
    lo, hi = map(float, bracket)
    if a is None:
        a = matching_radius(p)

    def neg_T(e):
        return -transmission(p, e, a).T

    res = minimize_scalar(neg_T, bounds=(lo, hi), method="bounded",
                          options={"xatol": tol, "maxiter": 500})
    e_T = float(res.x)
    T_peak = -float(res.fun)
    edge = 10 * tol + 1e-12 * abs(e_T)
    if e_T - lo < edge or hi - e_T < edge or T_peak <= max(-neg_T(lo), -neg_T(hi)):
        raise BracketError(f"no interior maximum of T in [{lo}, {hi}]")
    if symmetric and T_peak < 1 - 1e-6:
        raise BracketError(
            f"maximum T={T_peak:.9f} at eps={e_T} falls short of 1; bracket [{lo}, {hi}] "
            "does not isolate a transmission resonance")
    return e_T


def bw_profile(epsilon, params: BWParams):
    """Lorentzian eps_I^2 / ((eps - eps_R)^2 + eps_I^2)."""
    e = np.asarray(epsilon, dtype=float)
    g2 = params.epsilon_I ** 2
    out = g2 / ((e - params.epsilon_R) ** 2 + g2)
    return float(out) if out.ndim == 0 else out


def bw_deviation(p: Potential, params: BWParams, window_halfwidth: float,
                 n_points: int = 201, a: float | None = None) -> float:
    """max |T - BW| over eps_R +- window_halfwidth."""
    lo = params.epsilon_R - window_halfwidth
    hi = params.epsilon_R + window_halfwidth
    curve = scan_transmission(p, (lo, hi), n_points, a=a)
    return float(np.max(np.abs(curve.T - bw_profile(curve.epsilon, params))))


def bw_overlay(curve: TransmissionCurve, params: BWParams) -> np.ndarray:
    """Breit-Wigner values on the energies of ``curve``."""
    return bw_profile(curve.epsilon, params)


def transmission_values(p: Potential, energies: Iterable[float]) -> np.ndarray:
    a = matching_radius(p)
    return np.array([transmission(p, float(e), a).T for e in energies])
