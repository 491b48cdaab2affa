"""Bound states, Siegert resonances and transmission for symmetric 1-D potentials."""

from .model import (
    CustomSeries,
    GaussianDoubleBarrier,
    KGWellBarrier,
    PhysicalParams,
    SquareBarrier,
    free_particle,
    harmonic_oscillator,
    potential_from_dict,
)
from .rpm import Parity, ResonanceResult, converge_resonance, scan_resonances, solve
from .scattering import find_transmission_peak, scan_transmission, transmission
from .siegert import sa_width, siegert_state, wavefunction_series

__version__ = "0.1.0"
