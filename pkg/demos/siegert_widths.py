"""Widths from the Siegert approximation versus the exact (RPM) widths.

The approximation uses the real transmission-peak wavefunction: the outgoing
flux at the matching radius divided by the probability inside the barriers.
It should improve as the resonance narrows.
"""

from resonance1d import GaussianDoubleBarrier, sa_width, solve

CASES = [
    ("v0=1/2, lam=0.1", GaussianDoubleBarrier("1/2", "0.1"), "0.46-1e-6j"),
    ("v0=2,   lam=1", GaussianDoubleBarrier(2, 1), "0.559-0.158j"),
    ("v0=5,   lam=1", GaussianDoubleBarrier(5, 1), "1.11-0.0790j"),
    ("v0=10,  lam=1", GaussianDoubleBarrier(10, 1), "1.78-0.0238j"),
    ("v0=15,  lam=1", GaussianDoubleBarrier(15, 1), "2.30-0.00735j"),
]

print(f"{'potential':<16} {'Gamma_RPM':>12} {'Gamma_SA':>12} {'rel. error':>10}")
for name, p, seed in CASES:
    res = solve(p, 0, seed)
    eps_R, gamma = float(res.epsilon_R), float(res.gamma)
    rep = sa_width(p, 0, bracket=(eps_R - gamma, eps_R + gamma))
    print(f"{name:<16} {gamma:12.5e} {rep.gamma_SA:12.5e} {abs(rep.gamma_SA - gamma) / gamma:10.2e}")
