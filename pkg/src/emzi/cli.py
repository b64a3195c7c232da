"""Command line front end: single runs, fringe and tau3 scans, optimization.

All numeric CSV output uses 12 significant digits and is byte-reproducible for
identical configurations.  Every file-producing run writes a `.meta.json`
sidecar next to the CSV that echoes the configuration and records derived
quantities.  Exit codes: 0 success, 1 configuration error, 2 domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import ConfigurationError, DomainError
from .interferometer import evaluate
from .pulses import FINITE_N, IDEAL_LIMIT, PulseTriple
from .selftest import run_all
from .states import PRESET_NAMES, expand_state, preset, tau3
from .sweeps import (ScanSpec, fringe_scan, optimize_offsets, realize_optimum,
                     tau3_scan)

_MODES = {"ideal": IDEAL_LIMIT, "finite": FINITE_N}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise ConfigurationError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="emzi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with flat keys mirroring the flags; "
                                        "flags override file values")
        p.add_argument("--preset", choices=PRESET_NAMES)
        p.add_argument("--n", help="base photon numbers, e.g. 20,20,20")
        p.add_argument("--theta", help="pulse coupling phases theta0,theta1,theta2 (radians)")
        p.add_argument("--vartheta", type=float, help="state superposition phase (radians)")
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--mode", choices=sorted(_MODES), help="ideal or finite")
        p.add_argument("--backend", choices=("branches", "products"))
        p.add_argument("--out", help="CSV output path (a .meta.json sidecar is written too)")

    p = sub.add_parser("visibility", help="single interferometer run")
    common(p)

    p = sub.add_parser("fringe", help="intensity against the state phase")
    common(p)
    p.add_argument("--points", type=int, help="number of fringe points (default 64)")

    p = sub.add_parser("scan", help="visibility along a tau3 grid")
    common(p)
    p.add_argument("--tau3", help="grid start:stop:step or comma-separated values")

    p = sub.add_parser("optimize", help="exhaustive subset-offset optimization")
    common(p)
    p.add_argument("--tau3", help="grid start:stop:step or comma-separated values")
    p.add_argument("--bound", type=int, help="offset bound per Fock label (default 4)")

    p = sub.add_parser("selftest", help="randomized unitarity and backend checks")
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


# ---------------------------------------------------------------------------
# config handling
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "preset": "ghz_fock",
    "n": "20,20,20",
    "theta": "0,0,0",
    "vartheta": 0.0,
    "alpha": None,
    "beta": None,
    "mode": "ideal",
    "backend": "branches",
    "out": None,
    "points": 64,
    "tau3": "0:1:0.05",
    "bound": 4,
}


def _merge_config(args: argparse.Namespace) -> Dict[str, object]:
    cfg = dict(_DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"config: cannot read {path}: {exc}")
        for key, value in file_cfg.items():
            if key not in cfg and key != "command":
                raise ConfigurationError(f"config: unknown key {key!r}")
            cfg[key] = value
    for key in cfg:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    cfg["command"] = args.command
    return cfg


def _parse_ints(text, field: str, count: int) -> Tuple[int, ...]:
    try:
        parts = tuple(int(x) for x in str(text).split(","))
    except ValueError:
        raise ConfigurationError(f"{field}: expected {count} comma-separated integers, got {text!r}")
    if len(parts) != count:
        raise ConfigurationError(f"{field}: expected {count} values, got {len(parts)}")
    return parts


def _parse_floats(text, field: str, count: int) -> Tuple[float, ...]:
    try:
        parts = tuple(float(x) for x in str(text).split(","))
    except ValueError:
        raise ConfigurationError(f"{field}: expected {count} comma-separated numbers, got {text!r}")
    if len(parts) != count:
        raise ConfigurationError(f"{field}: expected {count} values, got {len(parts)}")
    return parts


def _parse_grid(text, field: str) -> Tuple[float, ...]:
    text = str(text)
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                raise ConfigurationError(f"{field}: step must be positive")
            values = []
            k = 0
            while True:
                v = start + k * step
                if v > stop + 1e-12:
                    break
                values.append(min(v, stop))
                k += 1
            return tuple(values)
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ConfigurationError(f"{field}: expected start:stop:step or comma list, got {text!r}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _write_csv(path: str, header: str, rows: Sequence[Sequence[float]]) -> None:
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{x:.12g}" for x in row) + "\n")


def _write_meta(out: Optional[str], cfg: Dict[str, object], derived: Dict[str, object],
                started: float) -> None:
    if not out:
        return
    record = {
        "engine_version": __version__,
        "config": cfg,
        "derived": derived,
        "timing_seconds": time.time() - started,
    }
    base = out[:-4] if out.endswith(".csv") else out
    with open(base + ".meta.json", "w") as fh:
        json.dump(record, fh, indent=2, default=str)
        fh.write("\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _state_and_pulses(cfg):
    n = _parse_ints(cfg["n"], "n", 3)
    thetas = _parse_floats(cfg["theta"], "theta", 3)
    coeffs, subsets = preset(str(cfg["preset"]), n=n, vartheta=float(cfg["vartheta"]),
                             alpha=cfg["alpha"], beta=cfg["beta"])
    psi = expand_state(coeffs, subsets)
    pulses = PulseTriple.for_state(psi, coupling_phases=thetas,
                                   eval_mode=_MODES[str(cfg["mode"])])
    return coeffs, psi, pulses


def _cmd_visibility(cfg, started: float) -> int:
    coeffs, psi, pulses = _state_and_pulses(cfg)
    res = evaluate(psi, pulses, backend=str(cfg["backend"]))
    t3 = tau3(coeffs)
    print(f"tau3={t3:.6f}, V={res.visibility:.6f}, Phi={res.phase:.6f}, A={res.amplitude:.6f}")
    if cfg["out"]:
        _write_csv(str(cfg["out"]), "tau3,visibility,phase,amplitude",
                   [(t3, res.visibility, res.phase, res.amplitude)])
    _write_meta(cfg["out"], cfg, {"tau3": t3, "visibility": res.visibility,
                                  "phase": res.phase, "amplitude": res.amplitude}, started)
    return 0


def _cmd_fringe(cfg, started: float) -> int:
    points = int(cfg["points"])
    if points <= 0:
        raise ConfigurationError(f"points: must be positive, got {points}")
    grid = [2.0 * math.pi * k / points for k in range(points)]
    rows = fringe_scan(str(cfg["preset"]), grid,
                       n=_parse_ints(cfg["n"], "n", 3),
                       coupling_phases=_parse_floats(cfg["theta"], "theta", 3),
                       eval_mode=_MODES[str(cfg["mode"])],
                       backend=str(cfg["backend"]),
                       alpha=cfg["alpha"], beta=cfg["beta"])
    if cfg["out"]:
        _write_csv(str(cfg["out"]), "vartheta,intensity", rows)
    else:
        print("vartheta,intensity")
        for row in rows:
            print(",".join(f"{x:.12g}" for x in row))
    _write_meta(cfg["out"], cfg, {"points": points}, started)
    return 0


def _cmd_scan(cfg, started: float) -> int:
    spec = ScanSpec(family=str(cfg["preset"]),
                    tau3_values=_parse_grid(cfg["tau3"], "tau3"),
                    n=_parse_ints(cfg["n"], "n", 3),
                    vartheta=float(cfg["vartheta"]),
                    coupling_phases=_parse_floats(cfg["theta"], "theta", 3),
                    eval_mode=_MODES[str(cfg["mode"])],
                    backend=str(cfg["backend"]))
    points, meta = tau3_scan(spec)
    rows = [(p.tau3, p.visibility, p.phase, p.amplitude) for p in points]
    if cfg["out"]:
        _write_csv(str(cfg["out"]), "tau3,visibility,phase,amplitude", rows)
    else:
        print("tau3,visibility,phase,amplitude")
        for row in rows:
            print(",".join(f"{x:.12g}" for x in row))
    _write_meta(cfg["out"], cfg, meta, started)
    return 0


def _cmd_optimize(cfg, started: float) -> int:
    grid = _parse_grid(cfg["tau3"], "tau3")
    n = _parse_ints(cfg["n"], "n", 3)
    bound = int(cfg["bound"])
    results = [optimize_offsets(str(cfg["preset"]), t, bound=bound, n=n) for t in grid]
    rows = [(r.tau3, r.best_visibility, 0.0, 1.0) for r in results]
    if cfg["out"]:
        _write_csv(str(cfg["out"]), "tau3,visibility,phase,amplitude", rows)
    else:
        print("tau3,visibility,phase,amplitude")
        for row in rows:
            print(",".join(f"{x:.12g}" for x in row))
    _write_meta(cfg["out"], cfg, {
        "bound": bound,
        "results": [{"tau3": r.tau3, "best_visibility": r.best_visibility,
                     "best_offsets": r.best_offsets, "evaluations": r.evaluations}
                    for r in results],
    }, started)
    return 0


def _cmd_selftest(args) -> int:
    results = run_all(cases=args.cases, seed=args.seed)
    ok = True
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name}: {status} ({r.cases} cases, worst deviation {r.worst:.3e})")
        ok = ok and r.passed
    return 0 if ok else 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    started = time.time()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "selftest":
            return _cmd_selftest(args)
        cfg = _merge_config(args)
        if args.command == "visibility":
            return _cmd_visibility(cfg, started)
        if args.command == "fringe":
            return _cmd_fringe(cfg, started)
        if args.command == "scan":
            return _cmd_scan(cfg, started)
        if args.command == "optimize":
            return _cmd_optimize(cfg, started)
        raise ConfigurationError(f"unknown command {args.command!r}")
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
