"""
Riccati-Pade quantization of symmetric one-dimensional problems.

The regularized logarithmic derivative f(x) = s/x - phi'(x)/phi(x) of an
even (s=0) or odd (s=1) eigenfunction has the expansion

    f(x) = x * sum_j f_j(eps) x**(2j)

whose coefficients follow from the Riccati equation by a quadratic
recurrence.  Requiring a rational approximant [M/N] in z = x**2 to match
M+N+2 of these coefficients forces the Hankel determinant

    H_D^d(eps) = det[f_{d+i+j-1}],  i, j = 1..D,  D = N+1,  d = M-N

to vanish.  Its roots, followed as D grows, converge to bound-state
energies (real roots) and Siegert resonances (complex roots, Im < 0).

All arithmetic runs in ``mpmath`` at the precision active when a function
is called; the callers pick it with ``mp.workdps``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Sequence

import mpmath as mp
import numpy as np

from .exceptions import NonConvergenceError, SequenceLostError, SingularDerivativeError
from .model import Potential, to_mpf

logger = logging.getLogger(__name__)

__all__ = [
    "Parity",
    "RiccatiCoeffs",
    "HankelSpec",
    "ResonanceResult",
    "RealInterval",
    "ComplexBox",
    "riccati_coefficients",
    "hankel_determinant",
    "hankel_with_derivative",
    "find_root",
    "real_roots",
    "seed_roots",
    "converge_resonance",
    "scan_resonances",
    "solve",
    "default_tolerance",
    "DEFAULT_DPS",
    "to_mpc",
]

#: working precision (decimal digits) used by :func:`solve`
DEFAULT_DPS = 64


class Parity(IntEnum):
    EVEN = 0
    ODD = 1


@dataclass(frozen=True)
class RiccatiCoeffs:
    """Coefficients f_0 ... f_nmax at a fixed complex energy."""

    epsilon: mp.mpc
    parity: Parity
    f: tuple

    @property
    def n_max(self) -> int:
        return len(self.f) - 1


@dataclass(frozen=True)
class HankelSpec:
    """Determinant dimension ``D = N + 1`` and displacement ``d = M - N``."""

    D: int
    d: int = 0

    def __post_init__(self):
        if self.D < 2:
            raise ValueError(f"Hankel dimension must be >= 2, got {self.D}")
        if self.d < 0:
            raise ValueError(f"displacement must be >= 0, got {self.d}")

    @property
    def highest_index(self) -> int:
        """Largest coefficient index entering the determinant."""
        return self.d + 2 * self.D - 1


@dataclass(frozen=True)
class ResonanceResult:
    """A converged eigenvalue epsilon_R + i epsilon_I.

    ``epsilon_I`` is stored with the physical sign (<= 0), so the width is
    ``gamma = -2 epsilon_I``.  ``sequence`` keeps the root found at every
    determinant dimension, which is what the error estimate is built from.
    """

    epsilon_R: mp.mpf
    epsilon_I: mp.mpf
    gamma: mp.mpf
    parity: Parity
    D_final: int
    d: int
    error_estimate: mp.mpf
    sequence: tuple = field(default=(), repr=False)

    @property
    def epsilon(self) -> mp.mpc:
        return mp.mpc(self.epsilon_R, self.epsilon_I)

    @property
    def is_bound(self) -> bool:
        return self.epsilon_I == 0

    def error_at(self, D: int):
        """Distance (max over components) between the member at D and the
        previous recorded member; D values without a member are skipped."""
        dims = [k for k, _ in self.sequence]
        if D not in dims or dims.index(D) == 0:
            raise KeyError(f"no member at D={D} with a predecessor")
        i = dims.index(D)
        return _component_distance(self.sequence[i][1], self.sequence[i - 1][1])

    def stable_strings(self) -> tuple[str, str]:
        """Real and imaginary parts truncated to the last stable digit."""
        return (truncate_to_error(self.epsilon_R, self.error_estimate),
                truncate_to_error(self.epsilon_I, self.error_estimate))


def _component_distance(a, b):
    a, b = mp.mpc(a), mp.mpc(b)
    return max(abs(a.real - b.real), abs(a.imag - b.imag))


def truncate_to_error(value, error) -> str:
    """Decimal string of ``value`` cut (not rounded) after the last stable digit."""
    value = mp.mpf(value)
    if value == 0:
        return "0"
    if error <= 0:
        places = mp.mp.dps
    else:
        places = max(0, int(mp.floor(-mp.log10(error))))
    text = mp.nstr(abs(value), mp.mp.dps, min_fixed=-mp.inf, max_fixed=mp.inf)
    if "." not in text:
        text += "."
    head, tail = text.split(".")
    tail = (tail + "0" * places)[:places]
    out = head + ("." + tail if places else "")
    return ("-" if value < 0 else "") + out


def default_tolerance():
    """Newton step tolerance 10**-(dps - 10), leaving guard digits for noise."""
    return mp.mpf(10) ** (-(mp.mp.dps - 10))


# ---------------------------------------------------------------------------
# coefficient recurrence


def _riccati_dual(v_coeffs: Sequence, s: int, epsilon, n_max: int):
    """f_n and df_n/deps for n = 0..n_max."""
    if n_max > len(v_coeffs):
        raise ValueError(
            f"recurrence to n={n_max} needs v_1..v_{n_max}, got {len(v_coeffs)} coefficients")
    f = [2 * epsilon / (2 * s + 1)]
    g = [mp.mpf(2) / (2 * s + 1)]
    for n in range(1, n_max + 1):
        acc = mp.mpc(0)
        dacc = mp.mpc(0)
        # the convolution is symmetric: pair j with n-1-j
        half = n // 2
        for j in range(half):
            acc += f[j] * f[n - 1 - j]
            dacc += f[j] * g[n - 1 - j] + g[j] * f[n - 1 - j]
        acc *= 2
        dacc *= 2
        if n % 2:
            acc += f[half] * f[half]
            dacc += 2 * f[half] * g[half]
        denom = 2 * n + 2 * s + 1
        f.append((acc - 2 * v_coeffs[n - 1]) / denom)
        g.append(dacc / denom)
    return f, g


def riccati_coefficients(v_coeffs: Sequence, parity, epsilon, n_max: int) -> RiccatiCoeffs:
    """Logarithmic-derivative coefficients f_0 ... f_{n_max} at energy ``epsilon``.

    ``v_coeffs`` holds v_1, v_2, ... of the potential (v_0 = 0).  The
    recurrence is

        f_0 = 2 eps / (2s + 1)
        f_n = (sum_{j<n} f_j f_{n-1-j} - 2 v_n) / (2n + 2s + 1)
    """
    s = int(Parity(parity))
    f, _ = _riccati_dual(v_coeffs, s, mp.mpc(epsilon), n_max)
    return RiccatiCoeffs(epsilon=mp.mpc(epsilon), parity=Parity(s), f=tuple(f))


# ---------------------------------------------------------------------------
# determinants


def _hankel_matrix(f: Sequence, spec: HankelSpec) -> list:
    d, D = spec.d, spec.D
    return [[f[d + i + j + 1] for j in range(D)] for i in range(D)]


def _lu_det(a: list):
    """Determinant by Gaussian elimination with scaled partial pivoting.

    Rows are divided by their largest entry before pivot selection; the
    scale factors are multiplied back in at the end.
    """
    a = [row[:] for row in a]
    n = len(a)
    det = mp.mpc(1)
    for i, row in enumerate(a):
        scale = max(abs(x) for x in row)
        if scale == 0:
            return mp.mpc(0)
        a[i] = [x / scale for x in row]
        det *= scale
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(a[r][c]))
        if a[p][c] == 0:
            return mp.mpc(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        rowc = a[c]
        for r in range(c + 1, n):
            m = a[r][c] / piv
            if m == 0:
                continue
            rowr = a[r]
            for k in range(c + 1, n):
                rowr[k] -= m * rowc[k]
    return det


def _lu_det_dual(a: list, da: list):
    """(det A, d det A) for matrices of dual numbers (value, derivative).

    The elimination is carried out on value/derivative pairs, so the
    derivative is exact to working precision.  If an exactly zero pivot
    column shows up the value is 0 and the derivative falls back to the
    column-replacement form of Jacobi's formula.
    """
    n = len(a)
    a = [row[:] for row in a]
    da = [row[:] for row in da]
    val = mp.mpc(1)
    der = mp.mpc(0)
    for c in range(n):
        p = max(range(c, n), key=lambda r: abs(a[r][c]))
        if a[p][c] == 0:
            return mp.mpc(0), None
        if p != c:
            a[c], a[p] = a[p], a[c]
            da[c], da[p] = da[p], da[c]
            val, der = -val, -der
        piv, dpiv = a[c][c], da[c][c]
        val, der = val * piv, der * piv + val * dpiv
        rowc, drowc = a[c], da[c]
        for r in range(c + 1, n):
            m = a[r][c] / piv
            dm = (da[r][c] - m * dpiv) / piv
            rowr, drowr = a[r], da[r]
            for k in range(c + 1, n):
                rowr[k] -= m * rowc[k]
                drowr[k] -= dm * rowc[k] + m * drowc[k]
    return val, der


def _jacobi_derivative(a: list, da: list):
    """sum_k det(A with column k replaced by column k of dA)."""
    n = len(a)
    total = mp.mpc(0)
    for k in range(n):
        b = [[(da[i][j] if j == k else a[i][j]) for j in range(n)] for i in range(n)]
        total += _lu_det(b)
    return total


def hankel_determinant(coeffs: RiccatiCoeffs, spec: HankelSpec) -> mp.mpc:
    """H_D^d(eps) = det[f_{d+i+j-1}]_{i,j=1..D} from precomputed coefficients."""
    if coeffs.n_max < spec.highest_index:
        raise ValueError(
            f"H_{spec.D}^{spec.d} needs f up to index {spec.highest_index}, "
            f"have {coeffs.n_max}")
    return _lu_det(_hankel_matrix(coeffs.f, spec))


def hankel_with_derivative(v_coeffs: Sequence, parity, epsilon, spec: HankelSpec):
    """Value and energy derivative of H_D^d at ``epsilon``.

    Dual numbers are propagated through both the coefficient recurrence and
    the elimination.
    """
    s = int(Parity(parity))
    f, g = _riccati_dual(v_coeffs, s, mp.mpc(epsilon), spec.highest_index)
    a = _hankel_matrix(f, spec)
    da = _hankel_matrix(g, spec)
    val, der = _lu_det_dual(a, da)
    if der is None:
        der = _jacobi_derivative(a, da)
    return val, der


# ---------------------------------------------------------------------------
# root finding


def find_root(v_coeffs: Sequence, parity, spec: HankelSpec, seed, tol=None,
              max_iter: int = 200):
    """Newton iteration on H_D^d(eps) starting from ``seed``.

    Roots of H_D^d near a resonance come in tight clusters, where plain
    Newton converges only linearly.  When consecutive steps shrink by a
    steady ratio r the step is multiplied by m = 1/(1-r) (the apparent
    multiplicity), provided that lowers |H|.

    Stops when the step drops below ``tol`` (default 10**-(dps-10)).  Inside
    a cluster the root is only determined to a fraction of the working
    precision; once steps below 10**-(dps/4) fail to reach a new minimum
    for four iterations the iterate is accepted as converged.

    Raises
    ------
    NonConvergenceError
        After ``max_iter`` steps; ``err.last`` is the final iterate.
    SingularDerivativeError
        If dH/deps vanishes at an iterate.
    """
    if tol is None:
        tol = default_tolerance()
    tol = mp.mpf(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    underflow = mp.mpf(2) ** (-mp.mp.prec * 8)
    eps = mp.mpc(seed)
    if not (mp.isfinite(eps.real) and mp.isfinite(eps.imag)):
        raise ValueError("seed must be finite")
    noise_floor = mp.mpf(10) ** (-(mp.mp.dps // 4)) * max(1, abs(eps))
    previous = None
    best = None
    stalls = 0
    val, der = hankel_with_derivative(v_coeffs, parity, eps, spec)
    for it in range(max_iter):
        if val == 0:
            return eps
        if der == 0 or abs(der) <= underflow * abs(val):
            raise SingularDerivativeError(
                f"dH/deps vanishes at eps={mp.nstr(eps, 15)} (D={spec.D}, d={spec.d})")
        step = val / der
        size = abs(step)
        if size < tol:
            return eps - step
        m = 1
        if previous is not None and 0.3 < size / previous < 0.97:
            m = min(20, int(mp.nint(1 / (1 - size / previous))))
        trial = eps - m * step
        tval, tder = hankel_with_derivative(v_coeffs, parity, trial, spec)
        if m > 1 and abs(tval) > abs(val):
            trial = eps - step
            tval, tder = hankel_with_derivative(v_coeffs, parity, trial, spec)
        eps, val, der = trial, tval, tder
        # below the floor, steps that stop improving are rounding noise
        if best is None or size < best:
            best, stalls = size, 0
        else:
            stalls += 1
        if stalls >= 4 and best < noise_floor:
            logger.debug("Newton accepted at noise floor %s (D=%d)", mp.nstr(best, 3), spec.D)
            return eps
        previous = size
    raise NonConvergenceError(
        f"Newton did not converge in {max_iter} iterations (D={spec.D}, d={spec.d}); "
        f"last iterate {mp.nstr(eps, 15)}", last=eps)


# ---------------------------------------------------------------------------
# seeding by explicit polynomials


@dataclass(frozen=True)
class RealInterval:
    lo: float
    hi: float

    def contains(self, z: complex, imag_tol: float) -> bool:
        return self.lo <= z.real <= self.hi and abs(z.imag) <= imag_tol


@dataclass(frozen=True)
class ComplexBox:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def contains(self, z: complex, imag_tol: float = 0.0) -> bool:
        return self.re_lo <= z.real <= self.re_hi and self.im_lo <= z.imag <= self.im_hi


def _poly_mul(p, q):
    out = [mp.mpf(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_add(p, q, sign=1):
    n = max(len(p), len(q))
    out = [mp.mpf(0)] * n
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] += sign * b
    return out


def _riccati_polynomials(v_coeffs, s, n_max):
    """Each f_n as an ascending coefficient list in eps (degree n + 1)."""
    f = [[mp.mpf(0), mp.mpf(2) / (2 * s + 1)]]
    for n in range(1, n_max + 1):
        acc = [mp.mpf(0)]
        for j in range(n):
            acc = _poly_add(acc, _poly_mul(f[j], f[n - 1 - j]))
        acc = _poly_add(acc, [2 * v_coeffs[n - 1]], sign=-1)
        denom = 2 * n + 2 * s + 1
        f.append([c / denom for c in acc])
    return f


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def hankel_polynomial(v_coeffs: Sequence, parity, spec: HankelSpec) -> list:
    """H_D^d(eps) expanded as a polynomial in eps (ascending coefficients)."""
    s = int(Parity(parity))
    f = _riccati_polynomials(v_coeffs, s, spec.highest_index)
    m = _hankel_matrix(f, spec)
    total = [mp.mpf(0)]
    for perm in itertools.permutations(range(spec.D)):
        term = [mp.mpf(_perm_sign(perm))]
        for i, j in enumerate(perm):
            term = _poly_mul(term, m[i][j])
        total = _poly_add(total, term)
    return total


def seed_roots(v_coeffs: Sequence, parity, D_small: int, d: int = 0,
               search: RealInterval | ComplexBox | None = None) -> list:
    """Roots of a small Hankel determinant, as starting points for Newton.

    For ``D_small`` in {2, 3, 4} the determinant is a polynomial in eps of
    modest degree; its roots come from the companion-matrix eigenvalues in
    double precision.  Only roots inside ``search`` are returned, sorted by
    real part.
    """
    if D_small not in (2, 3, 4):
        raise ValueError("seed_roots works with D_small in {2, 3, 4}")
    with mp.workdps(max(mp.mp.dps, 30)):
        coeffs = hankel_polynomial(v_coeffs, parity, HankelSpec(D_small, d))
    c = np.array([complex(x) for x in coeffs], dtype=complex).real
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("Hankel polynomial vanishes identically")
    c = c[: nz[-1] + 1]
    roots = np.polynomial.polynomial.polyroots(c) if c.size > 1 else np.array([])
    roots = np.asarray(roots, dtype=complex)
    if search is None:
        out = list(roots)
    else:
        scale = max(1.0, float(np.max(np.abs(roots)))) if roots.size else 1.0
        out = [z for z in roots if search.contains(z, imag_tol=1e-8 * scale)]
    if isinstance(search, RealInterval):
        out = [complex(z.real, 0.0) for z in out]
    return sorted(out, key=lambda z: (z.real, z.imag))


# ---------------------------------------------------------------------------
# sequences in D


def _near_real(z, scale, width):
    return abs(mp.mpc(z).imag) <= width * max(1, scale)


def _canonical(z):
    z = mp.mpc(z)
    # roots come in conjugate pairs; keep the decaying member
    return mp.conj(z) if z.imag > 0 else z


def real_roots(v_coeffs: Sequence, parity, spec: HankelSpec, lo, hi, n_samples: int = 24) -> list:
    """Real roots of H_D^d in [lo, hi] located by sign changes on a uniform grid.

    For real eps every f_n is real, so H is real and a sign change brackets
    a root.  Near a bound state H behaves like (eps - eps_0)**D and spans
    hundreds of orders of magnitude, so brackets are refined by bisection on
    the sign alone, down to a width of 10**-(dps/3).  Pairs of roots closer
    than the grid spacing are not resolved.
    """
    s = int(Parity(parity))

    def sign(e):
        f, _ = _riccati_dual(v_coeffs, s, mp.mpc(e), spec.highest_index)
        return mp.sign(_lu_det(_hankel_matrix(f, spec)).real)

    lo, hi = mp.mpf(lo), mp.mpf(hi)
    width = mp.mpf(10) ** (-(mp.mp.dps // 3)) * max(1, abs(lo), abs(hi))
    xs = [lo + (hi - lo) * k / (n_samples - 1) for k in range(n_samples)]
    signs = [sign(x) for x in xs]
    roots = [x for x, sg in zip(xs, signs) if sg == 0]
    for x0, x1, s0, s1 in zip(xs, xs[1:], signs, signs[1:]):
        if s0 * s1 >= 0:
            continue
        while x1 - x0 > width:
            mid = (x0 + x1) / 2
            sm = sign(mid)
            if sm == 0:
                x0 = x1 = mid
            elif sm == s0:
                x0 = mid
            else:
                x1 = mid
        roots.append((x0 + x1) / 2)
    return sorted(roots)


def converge_resonance(v_coeffs: Sequence, parity, d: int = 0, D_range=(2, 20),
                       seed=None, tol=None, max_iter: int = 200,
                       formation_tol: float = 1e-3, capture_radius: float = 0.05,
                       max_missing: int = 3) -> ResonanceResult:
    """Follow one root sequence eps^[D,d] for D in ``D_range`` and return its limit.

    A real ``seed`` selects a bound-state sequence: Newton started on the
    real axis stays there and returns real roots.  A complex seed selects a
    resonance; Newton runs in the complex plane and roots on the real axis
    are skipped.

    Until the sequence has formed (two consecutive roots within
    ``formation_tol * max(1, |eps|)``) every D is searched from ``seed``, and
    roots further than ``capture_radius * max(1, |seed|)`` from it are
    ignored so that a neighbouring, earlier-forming sequence is not adopted.
    After that each D starts from the previous member; if Newton jumps more
    than ten times the larger of the last two inter-D steps the seed is
    tried as well and the root nearest to the previous member is kept, ties
    going to the smaller |Im eps|.  For bound states a jump that remains too
    large is discarded.  A D with no acceptable root is skipped.

    The error estimate is max(|dRe|, |dIm|) between the last two members;
    for bound states the larger of the last two such steps.

    Raises
    ------
    SequenceLostError
        If more than ``max_missing`` consecutive D yield no member, the
        inter-D differences of a formed sequence grow for three consecutive
        D, or no sequence forms by ``D_range[1]``.
    """
    D_min, D_max = D_range
    if D_min < 2 or D_max < D_min + 1:
        raise ValueError("need D_min >= 2 and D_max >= D_min + 1")
    if seed is None:
        raise ValueError("converge_resonance needs a seed")
    seed = mp.mpc(seed)
    bound = seed.imag == 0
    s = Parity(parity)
    scale = max(1, abs(seed))
    real_width = mp.mpf(10) ** (-(mp.mp.dps // 2))
    capture = capture_radius * scale
    floor = mp.mpf(10) ** (-(mp.mp.dps // 2)) * scale

    def newton(start, D):
        try:
            z = find_root(v_coeffs, s, HankelSpec(D, d), start, tol=tol, max_iter=max_iter)
        except (NonConvergenceError, SingularDerivativeError) as err:
            logger.debug("D=%d: %s", D, err)
            return None
        if bound:
            # a real start keeps Newton on the real axis
            return mp.mpc(z.real)
        z = _canonical(z)
        if _near_real(z, scale, real_width):
            return None
        return z

    history: list = []
    diffs: list = []
    formed = False
    growth = 0
    missing = 0
    for D in range(D_min, D_max + 1):
        prev = history[-1][1] if history else None
        if not formed:
            z = newton(seed, D)
            if z is None or abs(z - seed) > capture:
                continue
            if prev is not None and abs(z - prev) <= formation_tol * scale:
                formed = True
                logger.debug("sequence formed at D=%d near %s", D, mp.nstr(z, 10))
            if not formed:
                history = [(D, z)]
                continue
        else:
            # members near a bound state scatter over a root cluster, so the
            # jump allowance uses the larger of the last two steps
            reach = 10 * max(diffs[-2:] or [formation_tol * scale]) + floor
            z = newton(prev, D)
            if z is None or abs(z - prev) > reach:
                alternatives = [c for c in (z, newton(seed, D)) if c is not None]
                z = min(alternatives, key=lambda c: (abs(c - prev), abs(c.imag))) \
                    if alternatives else None
                if bound and z is not None and abs(z - prev) > reach:
                    z = None
            if z is None:
                missing += 1
                logger.debug("D=%d: no member found (%d missing)", D, missing)
                if missing > max_missing:
                    raise SequenceLostError(
                        f"no root near the sequence for {missing} consecutive D up to D={D}",
                        history=history)
                continue
            missing = 0
        diff = _component_distance(z, prev)
        if diffs and diff > diffs[-1]:
            growth += 1
        else:
            growth = 0
        diffs.append(diff)
        history.append((D, z))
        if growth >= 3 and diff > 1000 * min(diffs):
            raise SequenceLostError(
                f"inter-D differences grew for three consecutive D up to D={D}",
                history=history)
    if not formed or len(history) < 2:
        raise SequenceLostError(
            f"no root sequence formed near {mp.nstr(seed, 8)} for D <= {D_max}",
            history=history)
    D_final, root = history[-1]
    eps_I = mp.mpf(0) if bound else root.imag
    # neighbouring real members can coincide while the cluster is still wide
    error = max(diffs[-2:]) if bound else diffs[-1]
    return ResonanceResult(
        epsilon_R=root.real,
        epsilon_I=eps_I,
        gamma=-2 * eps_I,
        parity=s,
        D_final=D_final,
        d=d,
        error_estimate=error,
        sequence=tuple(history),
    )


def scan_resonances(potential: Potential, parity, box: ComplexBox, D_seed: int = 4,
                    D_max: int = 20, dps: int | None = None, **kwargs) -> list:
    """Every resonance of one parity reachable from the roots of H_{D_seed}^0 in ``box``.

    Each seed root off the real axis is followed with :func:`converge_resonance`;
    limits closer than 10**-8 are merged.  Returns results sorted by eps_R.
    Seeds whose sequence is lost are skipped.
    """
    if dps is None:
        dps = DEFAULT_DPS
    kwargs.setdefault("capture_radius", 0.2)
    out: list = []
    with mp.workdps(dps):
        v = potential.taylor_coefficients(HankelSpec(D_max, 0).highest_index)
        for z in seed_roots(v, parity, D_seed, search=box):
            if abs(z.imag) <= 1e-8 * max(1.0, abs(z)):
                continue
            try:
                res = converge_resonance(v, parity, D_range=(2, D_max), seed=mp.mpc(z), **kwargs)
            except SequenceLostError as err:
                logger.debug("seed %s lost: %s", z, err)
                continue
            if all(abs(res.epsilon - other.epsilon) > 1e-8 * max(1, abs(res.epsilon))
                   for other in out):
                out.append(res)
    return sorted(out, key=lambda r: r.epsilon_R)


def solve(potential: Potential, parity, seed, D_max: int = 20, D_min: int = 2, d: int = 0,
          dps: int | None = None, **kwargs) -> ResonanceResult:
    """Convenience wrapper: coefficients, precision and sequence in one call.

    ``seed`` may be a Python complex or a string such as ``"0.46-1e-6j"``.
    """
    if dps is None:
        dps = DEFAULT_DPS
    with mp.workdps(dps):
        spec = HankelSpec(D_max, d)
        v = potential.taylor_coefficients(spec.highest_index)
        return converge_resonance(v, parity, d=d, D_range=(D_min, D_max),
                                  seed=to_mpc(seed), **kwargs)


def to_mpc(value) -> mp.mpc:
    if isinstance(value, str):
        value = complex(value.replace(" ", ""))
    if isinstance(value, complex):
        return mp.mpc(to_mpf(value.real), to_mpf(value.imag))
    if isinstance(value, (tuple, list)):
        return mp.mpc(to_mpf(value[0]), to_mpf(value[1]))
    if isinstance(value, mp.mpc):
        return value
    return mp.mpc(to_mpf(value))
