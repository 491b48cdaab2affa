"""How well does a Lorentzian describe the transmission peak?

For v = v0 x^2 exp(-x^2) the lowest even resonance narrows quickly as the
barriers grow.  We compute it with the Riccati-Pade method, locate the
transmission maximum and compare T(eps) with the Breit-Wigner line shape on
a window of one width either side.  CSV files for plotting are written to
the working directory.
"""

import mpmath as mp
import numpy as np

from resonance1d import GaussianDoubleBarrier, find_transmission_peak, scan_transmission, solve
from resonance1d.scattering import BWParams, bw_profile

SEEDS = {2: "0.559-0.158j", 5: "1.11-0.0790j", 10: "1.78-0.0238j", 15: "2.30-0.00735j"}

print(f"{'v0':>3} {'eps_R':>10} {'Gamma':>10} {'eps_T':>10} {'max|T-BW|':>10}")
for v0, seed in SEEDS.items():
    p = GaussianDoubleBarrier(v0, 1)
    res = solve(p, 0, seed)
    eps_R, gamma = float(res.epsilon_R), float(res.gamma)
    eps_T = find_transmission_peak(p, (eps_R - gamma, eps_R + gamma))
    curve = scan_transmission(p, (max(0.01, eps_R - 4 * gamma), eps_R + 4 * gamma), 201)
    bw = bw_profile(curve.epsilon, BWParams(eps_R, float(res.epsilon_I)))
    window = np.abs(curve.epsilon - eps_R) <= gamma
    dev = np.max(np.abs(curve.T - bw)[window])
    print(f"{v0:>3} {eps_R:10.6f} {gamma:10.3e} {eps_T:10.6f} {dev:10.4f}")
    with open(f"transmission_v0_{v0}.csv", "w") as fh:
        fh.write("epsilon,T,bw\n")
        for e, t, b in zip(curve.epsilon, curve.T, bw):
            fh.write(f"{e:.16e},{t:.16e},{b:.16e}\n")

print("\nThe peak sits at T = 1 (symmetric potential) and approaches the pole"
      "\nposition as the resonance narrows; the Lorentzian becomes exact in that limit.")
