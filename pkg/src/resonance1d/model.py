"""
Symmetric one-dimensional potentials in dimensionless form.

Every potential satisfies v(-x) = v(x) and, apart from the square barrier
used as a scattering oracle, v(0) = 0.  Each one carries two views of
itself:

* a closed-form evaluator, used by the ODE integrators far from the origin;
* a generator of the even Taylor coefficients v_j in
  ``v(x) = sum_{j>=1} v_j x**(2j)``, used by the Riccati-Pade solver.

Evaluation dispatches on the argument type.  ``mpmath`` numbers are handled
at the caller's working precision; floats and numpy arrays go through a
vectorized double-precision path.

Parameters given as Python floats are read through their shortest decimal
representation, so ``lam=0.1`` means exactly one tenth at any precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath as mp
import numpy as np

from .exceptions import NoBarrierError, TruncationError

__all__ = [
    "Potential",
    "GaussianDoubleBarrier",
    "KGWellBarrier",
    "CustomSeries",
    "SquareBarrier",
    "BarrierGeometry",
    "PhysicalParams",
    "to_mpf",
    "free_particle",
    "harmonic_oscillator",
    "evaluate",
    "taylor_coefficients",
    "asymptote",
    "barrier_geometry",
    "nondimensionalize",
    "potential_from_dict",
]


def to_mpf(value) -> mp.mpf:
    """Convert a parameter to ``mpf`` at the current working precision.

    Floats go through ``repr`` so that decimal literals stay exact.
    """
    if isinstance(value, mp.mpf):
        return +value
    if isinstance(value, float):
        return mp.mpf(repr(value))
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def _normalize_fields(obj, *names) -> None:
    # "p/q" strings become exact fractions; other values are kept as given
    for name in names:
        object.__setattr__(obj, name, _parse_number(getattr(obj, name)))


def _is_mp(x) -> bool:
    return isinstance(x, (mp.mpf, mp.mpc))


@dataclass(frozen=True)
class BarrierGeometry:
    """Position ``b > 0`` and height ``v_b`` of the barrier maximum."""

    b: float
    v_b: float


class Potential:
    """Interface shared by the concrete potentials."""

    kind: str = "abstract"

    def evaluate(self, x):
        raise NotImplementedError

    def taylor_coefficients(self, n: int) -> list:
        raise NotImplementedError

    def asymptote(self):
        """Limit of v(x) as |x| -> oo (in the caller's precision)."""
        return mp.mpf(0)

    def barrier_geometry(self) -> BarrierGeometry:
        return _numeric_barrier(self)

    def scalar_function(self):
        """Plain-float callable x -> v(x) for ODE right-hand sides."""
        return lambda x: float(self.evaluate(np.float64(x)))

    def breakpoints(self) -> tuple:
        """Positive x where v is not smooth; the integrators stop there."""
        return ()

    def support_radius(self):
        """Radius beyond which v equals its asymptote exactly, or None."""
        return None

    def scale_length(self) -> float:
        """Length over which the potential varies; bounds the matching radius."""
        return 1.0

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class GaussianDoubleBarrier(Potential):
    """v(x) = v0 x^2 exp(-lam x^2): a well at the origin between two barriers."""

    v0: object
    lam: object
    kind: str = field(default="gaussian", init=False, repr=False)

    def __post_init__(self):
        _normalize_fields(self, "v0", "lam")
        if not (float(self.v0) > 0 and float(self.lam) > 0):
            raise ValueError("gaussian double barrier needs v0 > 0 and lambda > 0")

    def evaluate(self, x):
        if _is_mp(x):
            v0, lam = to_mpf(self.v0), to_mpf(self.lam)
            return v0 * x * x * mp.exp(-lam * x * x)
        x = np.asarray(x, dtype=float)
        return float(self.v0) * x * x * np.exp(-float(self.lam) * x * x)

    def taylor_coefficients(self, n: int) -> list:
        if n < 1:
            raise ValueError("n must be >= 1")
        v0, lam = to_mpf(self.v0), to_mpf(self.lam)
        out = []
        term = v0
        for j in range(1, n + 1):
            out.append(term)
            # v_{j+1} = v_j * (-lam) / j
            term = term * (-lam) / j
        return out

    def scalar_function(self):
        v0, lam = float(self.v0), float(self.lam)
        exp = math.exp
        return lambda x: v0 * x * x * exp(-lam * x * x)

    def barrier_geometry(self) -> BarrierGeometry:
        v0, lam = to_mpf(self.v0), to_mpf(self.lam)
        return BarrierGeometry(b=1 / mp.sqrt(lam), v_b=v0 / (mp.e * lam))

    def scale_length(self) -> float:
        return 1.0 / math.sqrt(float(self.lam))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "v0": _jsonable(self.v0), "lambda": _jsonable(self.lam)}


@dataclass(frozen=True)
class KGWellBarrier(Potential):
    """v(x) = (x^2/2 - J) exp(-lam x^2) + J, tending to J at large |x|."""

    J: object
    lam: object
    kind: str = field(default="kg", init=False, repr=False)

    def __post_init__(self):
        _normalize_fields(self, "J", "lam")
        if not float(self.lam) > 0:
            raise ValueError("kg potential needs lambda > 0")

    def evaluate(self, x):
        if _is_mp(x):
            J, lam = to_mpf(self.J), to_mpf(self.lam)
            return (x * x / 2 - J) * mp.exp(-lam * x * x) + J
        x = np.asarray(x, dtype=float)
        J, lam = float(self.J), float(self.lam)
        # -J * expm1 keeps v(0) = 0 exact and avoids cancellation near the origin
        return 0.5 * x * x * np.exp(-lam * x * x) - J * np.expm1(-lam * x * x)

    def taylor_coefficients(self, n: int) -> list:
        if n < 1:
            raise ValueError("n must be >= 1")
        J, lam = to_mpf(self.J), to_mpf(self.lam)
        out = []
        for j in range(1, n + 1):
            out.append((-lam) ** (j - 1) / (2 * mp.factorial(j - 1))
                       - J * (-lam) ** j / mp.factorial(j))
        return out

    def asymptote(self):
        return to_mpf(self.J)

    def scalar_function(self):
        J, lam = float(self.J), float(self.lam)
        exp, expm1 = math.exp, math.expm1
        return lambda x: 0.5 * x * x * exp(-lam * x * x) - J * expm1(-lam * x * x)

    def barrier_geometry(self) -> BarrierGeometry:
        J, lam = float(self.J), float(self.lam)
        if 1 + 2 * lam * J <= 0:
            raise NoBarrierError(f"kg potential with J={J}, lambda={lam} is monotone in |x|")
        return _numeric_barrier(self, x0=math.sqrt((1 + 2 * lam * J) / lam))

    def scale_length(self) -> float:
        return 1.0 / math.sqrt(float(self.lam))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "J": _jsonable(self.J), "lambda": _jsonable(self.lam)}


@dataclass(frozen=True)
class CustomSeries(Potential):
    """Potential given directly by its coefficients ``[v_1, v_2, ...]``.

    With ``truncated=False`` (default) the list is an exact even polynomial,
    valid everywhere and padded with zeros on request.  With
    ``truncated=True`` it is the head of an infinite series: evaluation is
    restricted to ``validity_radius`` and asking for more coefficients than
    were supplied is an error.
    """

    coefficients: tuple
    truncated: bool = False
    kind: str = field(default="custom_series", init=False, repr=False)

    #: tail-term ratio defining the validated radius of a truncated series
    tail_ratio = 1e-30

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise ValueError("custom series needs at least one coefficient")

    @property
    def is_zero(self) -> bool:
        return all(float(c) == 0 for c in self.coefficients)

    @property
    def validity_radius(self) -> float:
        if not self.truncated or self.is_zero:
            return math.inf
        c = [abs(float(v)) for v in self.coefficients]
        n = len(c)
        if c[-1] == 0 or n == 1:
            return math.inf

        def ratio(x):
            z = x * x
            head = max(cj * z ** (j + 1) for j, cj in enumerate(c[:-1]))
            return c[-1] * z ** n / head if head > 0 else math.inf

        lo, hi = 0.0, 1.0
        while ratio(hi) < self.tail_ratio and hi < 1e6:
            lo, hi = hi, 2 * hi
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if ratio(mid) < self.tail_ratio:
                lo = mid
            else:
                hi = mid
        return lo

    def evaluate(self, x):
        radius = self.validity_radius
        if _is_mp(x):
            if abs(x) > radius:
                raise TruncationError(f"|x|={mp.nstr(abs(x), 6)} beyond validated radius {radius:.6g}")
            z = x * x
            return sum((to_mpf(v) * z ** (j + 1) for j, v in enumerate(self.coefficients)), mp.mpf(0))
        x = np.asarray(x, dtype=float)
        if np.any(np.abs(x) > radius):
            raise TruncationError(f"evaluation beyond validated radius {radius:.6g}")
        z = x * x
        coeffs = [0.0] + [float(v) for v in self.coefficients]
        return np.polynomial.polynomial.polyval(z, coeffs)

    def taylor_coefficients(self, n: int) -> list:
        if n < 1:
            raise ValueError("n must be >= 1")
        coeffs = [to_mpf(v) for v in self.coefficients[:n]]
        if len(coeffs) < n:
            if self.truncated:
                raise TruncationError(
                    f"requested {n} coefficients of a series truncated at {len(coeffs)}")
            coeffs += [mp.mpf(0)] * (n - len(coeffs))
        return coeffs

    def asymptote(self):
        if self.is_zero:
            return mp.mpf(0)
        raise NoBarrierError("polynomial potential has no finite asymptote")

    def barrier_geometry(self) -> BarrierGeometry:
        if self.is_zero:
            raise NoBarrierError("zero potential has no barrier")
        return _numeric_barrier(self)

    def support_radius(self):
        return 0.0 if self.is_zero else None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "coefficients": [_jsonable(c) for c in self.coefficients],
                "truncated": self.truncated}


@dataclass(frozen=True)
class SquareBarrier(Potential):
    """Rectangular barrier of height ``height`` on |x| < ``half_width``.

    Only meaningful for scattering, where its closed-form transmission
    serves as an oracle.  It has no Taylor expansion.
    """

    height: float
    half_width: float
    kind: str = field(default="square_barrier", init=False, repr=False)

    def evaluate(self, x):
        if _is_mp(x):
            return to_mpf(self.height) if abs(x) < self.half_width else mp.mpf(0)
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) < self.half_width, float(self.height), 0.0)

    def taylor_coefficients(self, n: int) -> list:
        raise NotImplementedError("square barrier has no Taylor expansion")

    def barrier_geometry(self) -> BarrierGeometry:
        return BarrierGeometry(b=float(self.half_width), v_b=float(self.height))

    def scalar_function(self):
        u, w = float(self.height), float(self.half_width)
        return lambda x: u if abs(x) < w else 0.0

    def breakpoints(self) -> tuple:
        return (float(self.half_width),)

    def support_radius(self):
        return float(self.half_width)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "height": self.height, "half_width": self.half_width}


def free_particle() -> CustomSeries:
    """v(x) = 0."""
    return CustomSeries((0,))


def harmonic_oscillator() -> CustomSeries:
    """v(x) = x^2/2, eigenvalues n + 1/2."""
    return CustomSeries((Fraction(1, 2),))


def _numeric_barrier(p: Potential, x0: float | None = None) -> BarrierGeometry:
    """Locate the barrier maximum of v on x > 0 by root-finding v'(x) = 0."""
    if x0 is None:
        if isinstance(p, CustomSeries):
            hi = min(p.validity_radius, 50.0)
        else:
            hi = 12.0 * p.scale_length()
        xs = np.linspace(0.0, hi, 4001)[1:]
        vs = p.evaluate(xs)
        interior = np.nonzero((vs[1:-1] > vs[:-2]) & (vs[1:-1] >= vs[2:]))[0]
        if interior.size == 0:
            raise NoBarrierError(f"{p.kind} potential has no interior maximum on (0, {hi:g}]")
        x0 = float(xs[interior[0] + 1])
    b = mp.findroot(lambda x: mp.diff(p.evaluate, x), mp.mpf(x0))
    if mp.diff(p.evaluate, b, 2) >= 0:
        raise NoBarrierError(f"stationary point at x={mp.nstr(b, 8)} is not a maximum")
    return BarrierGeometry(b=b, v_b=p.evaluate(b))


# Module-level spellings of the potential operations.

def evaluate(p: Potential, x):
    """Closed-form value v(x)."""
    return p.evaluate(x)


def taylor_coefficients(p: Potential, n: int) -> list:
    """Coefficients ``[v_1, ..., v_n]`` at the current mpmath precision."""
    return p.taylor_coefficients(n)


def asymptote(p: Potential):
    return p.asymptote()


def barrier_geometry(p: Potential) -> BarrierGeometry:
    return p.barrier_geometry()


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional inputs of V(X) = V0 X^2 exp(-alpha X^2)."""

    m: float
    hbar: float
    V0: float
    alpha: float
    L: float | None = None

    def __post_init__(self):
        for name in ("m", "hbar", "V0", "alpha"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.L is not None and not self.L > 0:
            raise ValueError("L must be positive")


def nondimensionalize(phys: PhysicalParams) -> tuple[float, float, float]:
    """Return ``(v0, lam, L)`` with v0 = m L^4 V0 / hbar^2 and lam = alpha L^2.

    Without an explicit length scale, L^2 = hbar / sqrt(m V0), which makes
    v0 = 1.  Energies scale as epsilon = m L^2 E / hbar^2.
    """
    L = phys.L
    if L is None:
        L = math.sqrt(phys.hbar / math.sqrt(phys.m * phys.V0))
    v0 = phys.m * L**4 * phys.V0 / phys.hbar**2
    lam = phys.alpha * L**2
    return v0, lam, L


def _jsonable(value):
    if isinstance(value, (int, float, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return mp.nstr(mp.mpf(value), mp.mp.dps)


def _parse_number(value):
    if isinstance(value, str) and "/" in value:
        return Fraction(value)
    return value


def potential_from_dict(data: dict) -> Potential:
    """Build a potential from a JSON-style mapping.

    Numeric fields may be numbers or strings; strings such as ``"0.1"`` or
    ``"1/2"`` keep full precision.
    """
    kind = data.get("kind")
    num = _parse_number
    if kind == "gaussian":
        return GaussianDoubleBarrier(num(data["v0"]), num(data["lambda"]))
    if kind == "kg":
        return KGWellBarrier(num(data["J"]), num(data["lambda"]))
    if kind == "custom_series":
        return CustomSeries(tuple(num(c) for c in data["coefficients"]),
                            truncated=bool(data.get("truncated", False)))
    if kind == "square_barrier":
        return SquareBarrier(float(data["height"]), float(data["half_width"]))
    if kind == "free":
        return free_particle()
    if kind == "harmonic":
        return harmonic_oscillator()
    raise ValueError(f"unknown potential kind {kind!r}")


def coefficient_sequence(values: Sequence) -> list:
    """Convert user-supplied coefficients to mpf at the current precision."""
    return [to_mpf(_parse_number(v)) for v in values]
