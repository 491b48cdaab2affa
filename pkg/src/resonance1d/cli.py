"""
Command-line front end.

Every command reads an optional JSON config (``--config FILE`` or a shipped
``--preset NAME``); command-line flags override fields of the file.  Numeric
output is deterministic: CSV cells use 17 significant digits and JSON is
written with sorted keys.

Exit codes: 0 success, 2 convergence failure, 3 unitarity/integration
failure, 4 configuration error.  ``RESONANCE1D_DPS`` sets the default
working precision of the RPM commands.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path

import mpmath as mp

from . import __version__
from .exceptions import (BracketError, ClosedChannelError, DegenerateStateError,
                         IntegrationError, NonConvergenceError, Resonance1DError,
                         SequenceLostError, SingularDerivativeError, TruncationError,
                         UnitarityError)
from .model import GaussianDoubleBarrier, potential_from_dict, to_mpf
from .rpm import (DEFAULT_DPS, ComplexBox, HankelSpec, Parity, converge_resonance,
                  scan_resonances, to_mpc)
from .scattering import BWParams, bw_profile, scan_transmission
from .siegert import sa_width, siegert_state

logger = logging.getLogger("resonance1d")

EXIT_OK = 0
EXIT_CONVERGENCE = 2
EXIT_UNITARITY = 3
EXIT_CONFIG = 4

ENV_DPS = "RESONANCE1D_DPS"
MIN_DPS = 30


class ConfigError(ValueError):
    """Invalid or incomplete run configuration."""


def fmt(x) -> str:
    """17 significant digits in scientific notation."""
    return f"{float(x):.16e}"


# ---------------------------------------------------------------------------
# configuration


def preset_names() -> list:
    root = resources.files("resonance1d") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_preset(name: str) -> dict:
    path = resources.files("resonance1d") / "presets" / f"{name}.json"
    if not path.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return json.loads(path.read_text())


def load_config(args) -> dict:
    cfg: dict = {}
    if getattr(args, "preset", None):
        cfg.update(load_preset(args.preset))
    if getattr(args, "config", None):
        try:
            cfg.update(json.loads(Path(args.config).read_text()))
        except FileNotFoundError as err:
            raise ConfigError(f"config file not found: {args.config}") from err
        except json.JSONDecodeError as err:
            raise ConfigError(f"config is not valid JSON: {err}") from err
    if getattr(args, "potential", None):
        try:
            cfg["potential"] = json.loads(args.potential)
        except json.JSONDecodeError as err:
            raise ConfigError(f"--potential is not valid JSON: {err}") from err
    return cfg


def resolve_dps(args, cfg: dict) -> int:
    """Flag, then config, then environment, then the library default."""
    if getattr(args, "dps", None) is not None:
        dps = args.dps
    elif "dps" in cfg:
        dps = cfg["dps"]
    elif os.environ.get(ENV_DPS):
        dps = os.environ[ENV_DPS]
    else:
        dps = DEFAULT_DPS
    try:
        dps = int(dps)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"precision must be an integer, got {dps!r}") from err
    if dps < MIN_DPS:
        raise ConfigError(f"precision_digits must be >= {MIN_DPS}, got {dps}")
    return dps


def build_potential(spec):
    if not isinstance(spec, dict):
        raise ConfigError("config needs a 'potential' object")
    try:
        return potential_from_dict(spec)
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"bad potential {spec!r}: {err}") from err


def parse_parity(value) -> Parity:
    if isinstance(value, str):
        key = value.strip().lower()
        if key in ("even", "0"):
            return Parity.EVEN
        if key in ("odd", "1"):
            return Parity.ODD
    elif value in (0, 1):
        return Parity(value)
    raise ConfigError(f"parity must be 'even' or 'odd', got {value!r}")


def parse_complex(value) -> mp.mpc:
    try:
        return to_mpc(value)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"cannot read {value!r} as a number") from err


def _pair(value, name):
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ConfigError(f"{name} must be a [lo, hi] pair")
    return float(value[0]), float(value[1])


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# resonances


RESONANCE_HEADER = ["label", "parity", "epsilon_R", "epsilon_I", "gamma",
                    "error_estimate", "D_final"]


def _runs(cfg: dict) -> list:
    if "runs" in cfg:
        runs = cfg["runs"]
    elif "potential" in cfg and "states" in cfg:
        runs = [{"potential": cfg["potential"], "states": cfg["states"]}]
    else:
        raise ConfigError("resonances config needs 'runs' or 'potential' + 'states'")
    if not runs:
        raise ConfigError("no runs requested")
    return runs


def compute_resonances(cfg: dict, dps: int, D_max: int | None = None, d: int | None = None):
    """Run every requested sequence; returns a list of (label, ResonanceResult)."""
    D_max = int(D_max if D_max is not None else cfg.get("D_max", 20))
    d = int(d if d is not None else cfg.get("d", 0))
    D_min = int(cfg.get("D_min", 2))
    out = []
    with mp.workdps(dps):
        for run in _runs(cfg):
            p = build_potential(run.get("potential"))
            v = p.taylor_coefficients(HankelSpec(D_max, d).highest_index)
            for state in run.get("states", []):
                if "seed" not in state:
                    raise ConfigError(f"state {state!r} has no seed")
                label = str(state.get("label", ""))
                res = converge_resonance(
                    v, parse_parity(state.get("parity", "even")), d=d,
                    D_range=(int(state.get("D_min", D_min)), D_max),
                    seed=parse_complex(state["seed"]),
                    capture_radius=float(state.get("capture_radius", 0.05)))
                logger.info("%s: %s (error %s)", label, mp.nstr(res.epsilon, 20),
                            mp.nstr(res.error_estimate, 3))
                out.append((label, res))
    return out


def resonances_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESONANCE_HEADER)
    for label, r in rows:
        w.writerow([label, r.parity.name.lower(), fmt(r.epsilon_R), fmt(r.epsilon_I),
                    fmt(r.gamma), fmt(r.error_estimate), r.D_final])
    return buf.getvalue()


def read_resonances_csv(text: str) -> list:
    """Parse CSV written by :func:`resonances_csv` back into dicts of floats."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({"label": row["label"], "parity": row["parity"],
                     **{k: float(row[k]) for k in RESONANCE_HEADER[2:6]},
                     "D_final": int(row["D_final"])})
    return rows


def resonances_table(rows, dps: int) -> str:
    """Human-readable view truncated to the last stable digit."""
    lines = [f"{'label':<10} {'parity':<6} {'epsilon_R':<28} {'-epsilon_I':<28} {'error':<9} D"]
    with mp.workdps(dps):
        for label, r in rows:
            re_s, im_s = r.stable_strings()
            im_s = im_s[1:] if im_s.startswith("-") else im_s
            lines.append(f"{label:<10} {r.parity.name.lower():<6} {re_s:<28} {im_s:<28} "
                         f"{mp.nstr(r.error_estimate, 2):<9} {r.D_final}")
    return "\n".join(lines) + "\n"


def cmd_resonances(args) -> int:
    cfg = load_config(args)
    dps = resolve_dps(args, cfg)
    rows = compute_resonances(cfg, dps, D_max=args.D_max, d=args.d)
    if args.csv:
        _write(resonances_csv(rows), args.csv)
    if args.csv != "-":
        sys.stdout.write(resonances_table(rows, dps))
    return EXIT_OK


# ---------------------------------------------------------------------------
# transmission


def cmd_transmission(args) -> int:
    cfg = load_config(args)
    p = build_potential(cfg.get("potential"))
    lo, hi = _pair(args.range or cfg.get("range"), "range")
    n = int(args.points or cfg.get("points", 201))
    curve = scan_transmission(p, (lo, hi), n)
    bw = cfg.get("bw")
    if args.bw:
        bw = {"epsilon_R": args.bw[0], "epsilon_I": args.bw[1]}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["epsilon", "T", "R", "residual"]
    params = None
    if bw:
        params = BWParams(float(to_mpf(bw["epsilon_R"])), float(to_mpf(bw["epsilon_I"])))
        header.append("bw")
    w.writerow(header)
    for pt in curve.points:
        row = [fmt(pt.epsilon), fmt(pt.T), fmt(pt.R), fmt(pt.unitarity_residual)]
        if params is not None:
            row.append(fmt(bw_profile(pt.epsilon, params)))
        w.writerow(row)
    _write(buf.getvalue(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Siegert approximation


def sa_report(cfg: dict, dps: int, parity=None, epsilon_T=None) -> dict:
    p = build_potential(cfg.get("potential"))
    parity = parse_parity(parity if parity is not None else cfg.get("parity", "even"))
    rpm = None
    if "rpm" in cfg:
        rpm = parse_complex([cfg["rpm"]["epsilon_R"], cfg["rpm"]["epsilon_I"]])
        rpm = mp.mpc(rpm.real, -abs(rpm.imag))
    elif "rpm_seed" in cfg:
        with mp.workdps(dps):
            v = p.taylor_coefficients(HankelSpec(int(cfg.get("D_max", 20)), 0).highest_index)
            res = converge_resonance(v, parity, D_range=(2, int(cfg.get("D_max", 20))),
                                     seed=parse_complex(cfg["rpm_seed"]))
            rpm = res.epsilon
    if epsilon_T is None:
        epsilon_T = cfg.get("epsilon_T")
    bracket = cfg.get("bracket")
    if bracket is None and rpm is not None and epsilon_T is None:
        gamma = -2 * float(rpm.imag)
        bracket = [float(rpm.real) - gamma, float(rpm.real) + gamma]
    if epsilon_T is None and bracket is None and rpm is None:
        raise ConfigError("sa needs epsilon_T, a bracket, or RPM data")
    report = sa_width(p, parity, None if epsilon_T is None else float(epsilon_T),
                      bracket=None if bracket is None else _pair(bracket, "bracket"),
                      epsilon_R=None if rpm is None else float(rpm.real))
    out = {k: (float(fmt(v)) if isinstance(v, float) else v)
           for k, v in report.as_dict().items()}
    out["parity"] = parity.name.lower()
    out["potential"] = p.to_dict()
    if rpm is not None:
        gamma_rpm = -2 * float(rpm.imag)
        out["epsilon_R"] = float(fmt(rpm.real))
        out["gamma_RPM"] = float(fmt(gamma_rpm))
        out["ratio"] = float(fmt(report.gamma_SA / gamma_rpm))
    return out


def cmd_sa(args) -> int:
    cfg = load_config(args)
    dps = resolve_dps(args, cfg)
    out = sa_report(cfg, dps, parity=args.parity, epsilon_T=args.epsilon_T)
    _write(json.dumps(out, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# overlap of the two lowest resonances


OVERLAP_HEADER = ["v0", "epsilon_R1", "gamma1", "epsilon_R2", "gamma2", "overlap"]


def overlap_rows(v0_values, lam, dps: int, D_max: int = 20) -> list:
    """First two resonances (either parity) of the Gaussian barrier family."""
    rows = []
    for v0 in v0_values:
        p = GaussianDoubleBarrier(v0, lam)
        geom = p.barrier_geometry()
        box = ComplexBox(0.0, 3 * float(geom.v_b) + 1, -3.0, 0.0)
        found = []
        for parity in Parity:
            found += scan_resonances(p, parity, box, D_max=D_max, dps=dps)
        found.sort(key=lambda r: r.epsilon_R)
        if len(found) < 2:
            raise SequenceLostError(f"fewer than two resonances found for v0={v0}")
        r1, r2 = found[:2]
        g1, g2 = float(r1.gamma), float(r2.gamma)
        e1, e2 = float(r1.epsilon_R), float(r2.epsilon_R)
        rows.append({"v0": float(to_mpf(v0)), "epsilon_R1": e1, "gamma1": g1,
                     "epsilon_R2": e2, "gamma2": g2,
                     "overlap": abs(e2 - e1) < (g1 + g2) / 2})
    return rows


def cmd_overlap(args) -> int:
    cfg = load_config(args)
    dps = resolve_dps(args, cfg)
    v0_values = args.v0 or cfg.get("v0", [2, 3, 5, 10, 15])
    lam = args.lam if args.lam is not None else cfg.get("lambda", 1)
    rows = overlap_rows(v0_values, lam, dps, D_max=int(cfg.get("D_max", 20)))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(OVERLAP_HEADER)
    for r in rows:
        w.writerow([fmt(r["v0"]), fmt(r["epsilon_R1"]), fmt(r["gamma1"]),
                    fmt(r["epsilon_R2"]), fmt(r["gamma2"]), str(r["overlap"]).lower()])
    _write(buf.getvalue(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# wavefunction export


def cmd_wavefunction(args) -> int:
    cfg = load_config(args)
    dps = resolve_dps(args, cfg)
    p = build_potential(cfg.get("potential"))
    parity = parse_parity(cfg.get("parity", "even"))
    if "epsilon" not in cfg:
        raise ConfigError("wavefunction needs 'epsilon'")
    a = cfg.get("a")
    with mp.workdps(dps):
        state = siegert_state(p, parity, parse_complex(cfg["epsilon"]),
                              a=None if a is None else float(a), M=int(cfg.get("M", 24)),
                              n_grid=int(args.points or cfg.get("points", 401)))
    _write(state.to_csv(), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resonance1d",
        description="Resonances, transmission and Siegert widths of symmetric 1-D potentials.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, rpm=True):
        sp.add_argument("--config", help="JSON run configuration")
        sp.add_argument("--preset", help="shipped configuration name")
        sp.add_argument("--potential", help='potential as JSON, e.g. \'{"kind": "gaussian", '
                                            '"v0": 2, "lambda": 1}\'')
        if rpm:
            sp.add_argument("--dps", type=int, help=f"working precision (env {ENV_DPS})")

    sp = sub.add_parser("resonances", help="converge RPM root sequences")
    common(sp)
    sp.add_argument("--D-max", dest="D_max", type=int)
    sp.add_argument("--d", type=int)
    sp.add_argument("--csv", help="write full-precision CSV here ('-' for stdout only)")
    sp.set_defaults(func=cmd_resonances)

    sp = sub.add_parser("transmission", help="scan T(eps) to CSV")
    common(sp, rpm=False)
    sp.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"))
    sp.add_argument("--points", type=int)
    sp.add_argument("--bw", nargs=2, type=float, metavar=("EPS_R", "EPS_I"),
                    help="add a Breit-Wigner column")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_transmission)

    sp = sub.add_parser("sa", help="Siegert-approximation width as JSON")
    common(sp)
    sp.add_argument("--parity")
    sp.add_argument("--epsilon-T", dest="epsilon_T", type=float)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_sa)

    sp = sub.add_parser("overlap", help="first two resonances across v0 to CSV")
    common(sp)
    sp.add_argument("--v0", nargs="+", type=float)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_overlap)

    sp = sub.add_parser("wavefunction", help="Siegert state |phi|^2 to CSV")
    common(sp)
    sp.add_argument("--points", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_wavefunction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ClosedChannelError, TruncationError, KeyError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (SequenceLostError, NonConvergenceError, SingularDerivativeError,
            BracketError, DegenerateStateError) as err:
        print(f"convergence failure: {err}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (UnitarityError, IntegrationError) as err:
        print(f"unitarity failure: {err}", file=sys.stderr)
        return EXIT_UNITARITY
    except Resonance1DError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
