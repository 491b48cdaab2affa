"""Converge the resonance tables shipped as presets and show them next to the
reference values.

Run ``python demos/reproduce_tables.py [table1|table2|table3]``; with no
argument all three are computed (table3 runs at 110 digits and takes a few
minutes).
"""

import sys
import time

import mpmath as mp

from resonance1d.cli import compute_resonances, load_preset

REFERENCE = {
    "table1": ["0.46014727653933356360", "1.2804203534682821470", "1.8531086351750533910",
               "2.2323252762455511600", "2.567615869399468602", "2.887957554267041665"],
    "table2": ["0.55937118458252732995", "1.1082157629920295074", "1.7816763825869113601",
               "2.3042519331774868362"],
    "table3": ["0.5020403621419", "1.4209709457146932076", "2.1271970775224959319",
               "2.5845828598531001914", "2.9244219292377372486", "3.255486140023381540",
               "3.5572161626513698", "3.824329026868890", "4.055433668209184",
               "4.249963938764321", "4.407748386304", "4.528814027868"],
}


def show(name):
    cfg = load_preset(name)
    print(f"\n== {name}: {cfg['description']}")
    t0 = time.perf_counter()
    rows = compute_resonances(cfg, cfg["dps"])
    print(f"   converged {len(rows)} sequences in {time.perf_counter() - t0:.1f}s "
          f"at {cfg['dps']} digits")
    with mp.workdps(cfg["dps"]):
        for (label, res), ref in zip(rows, REFERENCE[name]):
            re_s, im_s = res.stable_strings()
            diff = abs(res.epsilon_R - mp.mpf(ref))
            print(f"   {label:<6} {re_s:<26} {im_s:<26} |dRe| vs table {mp.nstr(diff, 2)}")


if __name__ == "__main__":
    for name in sys.argv[1:] or ["table1", "table2", "table3"]:
        show(name)
