"""The lowest resonance of v = x^2 exp(-0.1 x^2)/2 is a quasi-bound state.

Its Siegert wavefunction (order-24 Taylor series near the origin, continued
by integration) lives almost entirely between the barriers at x = +-b.
Writes ``phi_table1_n0.csv`` with columns x, Re phi, Im phi, |phi|^2.
"""

import mpmath as mp

from resonance1d import GaussianDoubleBarrier, siegert_state, solve
from resonance1d.siegert import localization_ratio

p = GaussianDoubleBarrier("1/2", "0.1")
res = solve(p, 0, "0.46-1e-6j")
b = float(p.barrier_geometry().b)
with mp.workdps(64):
    state = siegert_state(p, 0, res.epsilon, M=24, n_grid=401)
    print(f"eps = {mp.nstr(res.epsilon, 20)}")
print(f"barrier top at b = {b:.4f}, state sampled out to a = {state.x[-1]:.3f}")
print(f"int_b^a |phi|^2 / int_0^b |phi|^2 = {localization_ratio(state, b):.2e}")
state.to_csv("phi_table1_n0.csv")
