"""Command-line front end: analyses as subcommands, CSV output.

Every CSV starts with a ``#``-prefixed metadata block (tool version, fully
resolved configuration, decoder gate counts where relevant) so outputs are
self-describing and reproducible; reals carry 17 significant digits.  Exit
codes: 0 success, 2 invalid input, 3 unreachable target / invalid regime.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bloch import BlochVector, PlaneCoords, fidelity_to_magic, from_plane
from .cost import (CostModel, UnreachableTargetError, comparison_curve)
from .densmat import (DECODER_ONE_QUBIT_GATES, DECODER_TWO_QUBIT_GATES,
                      NoiseParams, distill_round)
from .ideal_map import (basin_grid, iterate_and_classify, off_axis_threshold,
                        on_axis_threshold)
from .noisy_distill import (InvalidRegimeError, NoDistillationError,
                            fidelity_curve, noisy_fixed_points)

#: Documented defaults for every subcommand parameter.
DEFAULTS = {
    "iterate": {"x": None, "y": None, "z": None, "fidelity": None, "r": 0.0,
                "theta": 0.0, "rounds": 60, "noise_e1": 0.0, "noise_e2": 0.0,
                "radius_tol": 1e-6, "out": "-"},
    "basin": {"fidelity": None, "rmax": None, "nr": 80, "ntheta": 120,
              "rounds": 60, "radius_tol": 1e-6, "out": "-"},
    "threshold": {"mode": None, "theta": 0.0, "e1": 1.3e-4, "e2": 4.7e-3,
                  "out": "-"},
    "curve": {"e1": None, "e2": None, "grid": "0.51:0.999:80", "out": "-"},
    "cost": {"e": 1e-3, "target": 0.99, "grid": "0.85:0.9895:120",
             "include_one_qubit": False, "out": "-"},
    "gain": {"fidelity": None, "sweep": "r", "theta": 0.0, "r": 0.3,
             "grid": None, "out": "-"},
}

#: Noise settings plotted when none are given to ``curve``.
CURVE_DEFAULT_SETTINGS = [(1.3e-4, 1.3e-4), (1.3e-4, 4.7e-3), (4.7e-3, 4.7e-3)]


@dataclass
class RunConfig:
    """Resolved parameters of one subcommand invocation.

    Serializes to a flat ``key = value`` text file and back without loss;
    command-line flags override file values which override defaults.
    """

    command: str
    params: dict

    def to_file(self, path: str) -> None:
        lines = [f"command = {self.command}"]
        for k in sorted(self.params):
            lines.append(f"{k} = {_cfg_repr(self.params[k])}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        command = ""
        params = {}
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line: {raw!r}")
                key, val = (s.strip() for s in line.split("=", 1))
                if key == "command":
                    command = val
                else:
                    params[key] = _cfg_parse(val)
        return cls(command=command, params=params)


def _cfg_repr(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return "; ".join(_cfg_repr(x) for x in v)
    return str(v)


def _cfg_parse(s: str):
    if ";" in s:
        return [_cfg_parse(part.strip()) for part in s.split(";")]
    low = s.lower()
    if low == "none":
        return None
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _fmt(v) -> str:
    if v is None:
        return "nan"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _thread_count() -> int:
    n = min(4, os.cpu_count() or 1)
    cap = os.environ.get("MAGICFORGE_THREADS")
    if cap is not None:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"MAGICFORGE_THREADS must be an integer, got {cap!r}")
    return n


def _write(out_path: str, meta: list, header: list, rows) -> None:
    lines = [f"# magicforge {__version__}"]
    lines += [f"# {k} = {_cfg_repr(v)}" for k, v in meta]
    lines.append(",".join(header))
    lines += [",".join(_fmt(c) for c in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolve(args: argparse.Namespace, command: str) -> RunConfig:
    params = dict(DEFAULTS[command])
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        file_cfg = RunConfig.from_file(cfg_path)
        if file_cfg.command and file_cfg.command != command:
            raise ValueError(
                f"config file is for command {file_cfg.command!r}, not {command!r}")
        unknown = set(file_cfg.params) - set(params)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        params.update(file_cfg.params)
    for key in params:
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    return RunConfig(command=command, params=params)


def _meta(cfg: RunConfig, extra: list = ()) -> list:
    meta = [("command", cfg.command)]
    meta += [(k, cfg.params[k]) for k in sorted(cfg.params)]
    meta += list(extra)
    return meta


# --- subcommands -----------------------------------------------------------

#: States typed on the command line may overshoot the ball by rounded
#: decimals; up to this much they are renormalized onto the sphere.
CLI_CLAMP_TOL = 1e-3


def _user_state(x: float, y: float, z: float) -> BlochVector:
    n2 = x * x + y * y + z * z
    if 1.0 < n2 <= (1.0 + CLI_CLAMP_TOL) ** 2:
        s = 1.0 / math.sqrt(n2)
        x, y, z = x * s, y * s, z * s
    return BlochVector(x, y, z)


def _cmd_iterate(cfg: RunConfig) -> None:
    p = cfg.params
    has_xyz = p["x"] is not None or p["y"] is not None or p["z"] is not None
    has_plane = p["fidelity"] is not None
    if has_xyz == has_plane:
        raise ValueError("specify either --x/--y/--z or --fidelity [--r --theta]")
    if has_xyz:
        if p["x"] is None or p["y"] is None or p["z"] is None:
            raise ValueError("all of --x --y --z are required together")
        state = _user_state(p["x"], p["y"], p["z"])
    else:
        state = from_plane(PlaneCoords(
            a=math.sqrt(3.0) * (2.0 * p["fidelity"] - 1.0),
            r=p["r"], theta=p["theta"]))
    noise = NoiseParams.from_gate_errors(p["noise_e1"], p["noise_e2"])
    if noise.is_zero:
        trace = iterate_and_classify(state, max_rounds=p["rounds"],
                                     radius_tol=p["radius_tol"])
        states = trace.states
        label = trace.classification.label
    else:
        # exact channel iteration; ideal-attractor classification still applies
        states = [state]
        for _ in range(p["rounds"]):
            outcome = distill_round(states[-1], noise)
            if outcome.state is None:
                break
            states.append(outcome.bloch)
        label = iterate_and_classify(
            states[-1], max_rounds=1, radius_tol=p["radius_tol"]
        ).classification.label if len(states) else "Unresolved"
    rows = [(k, s.x, s.y, s.z, fidelity_to_magic(s), label)
            for k, s in enumerate(states)]
    _write(p["out"], _meta(cfg), ["round", "x", "y", "z", "fidelity", "class"], rows)


def _cmd_basin(cfg: RunConfig) -> None:
    p = cfg.params
    if p["fidelity"] is None:
        raise ValueError("--fidelity is required")
    points = basin_grid(p["fidelity"], r_max=p["rmax"], n_r=p["nr"],
                        n_theta=p["ntheta"], max_rounds=p["rounds"],
                        radius_tol=p["radius_tol"], threads=_thread_count())
    rows = [(pt.r, pt.theta, pt.x, pt.y, pt.z,
             pt.classification.label if pt.classification else "OutOfDomain",
             pt.rounds_used, int(pt.in_ball)) for pt in points]
    _write(p["out"], _meta(cfg),
           ["r", "theta", "x", "y", "z", "class", "rounds_used", "in_ball"], rows)


def _cmd_threshold(cfg: RunConfig) -> None:
    p = cfg.params
    mode = p["mode"]
    if mode == "on-axis":
        pairs = [("threshold_f", on_axis_threshold())]
    elif mode == "off-axis":
        pairs = [("theta", p["theta"]),
                 ("threshold_f", off_axis_threshold(p["theta"]))]
    elif mode == "noisy":
        fp = noisy_fixed_points(NoiseParams.from_gate_errors(p["e1"], p["e2"]))
        pairs = [("threshold_f", fp.threshold_f), ("f_ceiling", fp.f_ceiling),
                 ("epsilon_star", fp.epsilon_star)]
    else:
        raise ValueError(f"unknown threshold mode {mode!r}")
    lines = [f"# magicforge {__version__}"]
    lines += [f"# {k} = {_cfg_repr(v)}" for k, v in _meta(cfg)]
    lines += [f"{k} = {_fmt(v)}" for k, v in pairs]
    text = "\n".join(lines) + "\n"
    if p["out"] == "-":
        sys.stdout.write(text)
    else:
        with open(p["out"], "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_grid(spec: str) -> np.ndarray:
    try:
        start, stop, count = spec.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except Exception as exc:
        raise ValueError(f"bad grid spec {spec!r}, expected start:stop:count") from exc
    if len(grid) < 1:
        raise ValueError("empty grid")
    return grid


def _cmd_curve(cfg: RunConfig) -> None:
    p = cfg.params
    e1s = p["e1"] if p["e1"] is not None else [s[0] for s in CURVE_DEFAULT_SETTINGS]
    e2s = p["e2"] if p["e2"] is not None else [s[1] for s in CURVE_DEFAULT_SETTINGS]
    if isinstance(e1s, float):
        e1s = [e1s]
    if isinstance(e2s, float):
        e2s = [e2s]
    if len(e1s) != len(e2s):
        raise ValueError("--e1 and --e2 must be given the same number of times")
    settings = [(0.0, 0.0)] + list(zip(e1s, e2s))
    grid = _parse_grid(p["grid"])
    curves = [fidelity_curve(NoiseParams.from_gate_errors(e1, e2), grid)
              for e1, e2 in settings]
    header = ["f_in"]
    meta_extra = []
    for i, (e1, e2) in enumerate(settings):
        header += [f"f_out_s{i}", f"f_limit_s{i}"]
        meta_extra.append((f"setting_s{i}", f"E1={e1!r};E2={e2!r}"))
    rows = []
    for j, f in enumerate(grid):
        row = [float(f)]
        for c in curves:
            row += [float(c.f_out_one_round[j]), float(c.f_out_limit[j])]
        rows.append(row)
    _write(p["out"], _meta(cfg, meta_extra), header, rows)


def _cmd_cost(cfg: RunConfig) -> None:
    p = cfg.params
    model = CostModel(target_f=p["target"],
                      noise=NoiseParams.from_gate_errors(p["e"], p["e"]),
                      include_one_qubit=p["include_one_qubit"])
    grid = _parse_grid(p["grid"])
    points = comparison_curve(model, grid)
    reachable = [pt for pt in points
                 if pt.expected_gates_faulty is not None
                 and pt.expected_gates_ideal_logical is not None]
    if not reachable:
        raise UnreachableTargetError(
            "no grid point can reach the target on both branches")
    rows = []
    for pt in points:
        cross = None
        if pt.expected_gates_faulty is not None \
                and pt.expected_gates_ideal_logical not in (None, 0.0):
            cross = pt.expected_gates_faulty / pt.expected_gates_ideal_logical
        rows.append((pt.f_in, pt.expected_gates_faulty,
                     -1 if pt.rounds_faulty is None else pt.rounds_faulty,
                     pt.expected_gates_ideal_logical,
                     -1 if pt.rounds_ideal is None else pt.rounds_ideal,
                     cross))
    extra = [("b2", DECODER_TWO_QUBIT_GATES),
             ("one_qubit_gates", DECODER_ONE_QUBIT_GATES),
             ("gates_per_round", model.gates_per_round),
             ("accounting", "C(k) = 5*C(k-1) + gates_per_round/P(k)"),
             ("unreachable_sentinels", "gates=nan rounds=-1")]
    _write(p["out"], _meta(cfg, extra),
           ["f_in", "gates_faulty", "rounds_faulty", "gates_ideal_logical",
            "rounds_ideal", "crossover_overhead"], rows)


def _cmd_gain(cfg: RunConfig) -> None:
    p = cfg.params
    if p["fidelity"] is None:
        raise ValueError("--fidelity is required")
    from .bloch import max_plane_radius
    from .ideal_map import fidelity_difference
    a = math.sqrt(3.0) * (2.0 * p["fidelity"] - 1.0)
    if p["sweep"] == "r":
        grid_spec = p["grid"] or f"0:{max_plane_radius(p['fidelity'])!r}:200"
        rs = _parse_grid(grid_spec)
        rows = [(float(r), p["theta"],
                 fidelity_difference(PlaneCoords(a=a, r=float(r),
                                                 theta=p["theta"])))
                for r in rs]
    elif p["sweep"] == "theta":
        grid_spec = p["grid"] or f"0:{2 * math.pi!r}:361"
        ths = _parse_grid(grid_spec)
        rows = [(p["r"], float(t),
                 fidelity_difference(PlaneCoords(a=a, r=p["r"], theta=float(t))))
                for t in ths]
    else:
        raise ValueError(f"sweep must be 'r' or 'theta', got {p['sweep']!r}")
    _write(p["out"], _meta(cfg), ["r", "theta", "d"], rows)


_RUNNERS = {"iterate": _cmd_iterate, "basin": _cmd_basin,
            "threshold": _cmd_threshold, "curve": _cmd_curve,
            "cost": _cmd_cost, "gain": _cmd_gain}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="magicforge",
        description="Magic state distillation analyses; CSV output.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key = value config file; "
                        "flags override file values")
        sp.add_argument("--save-config", dest="save_config",
                        help="write the resolved configuration to this path")
        sp.add_argument("--out", help="output path ('-' for stdout)")

    sp = sub.add_parser("iterate", help="trace repeated distillation of one state")
    common(sp)
    sp.add_argument("--x", type=float)
    sp.add_argument("--y", type=float)
    sp.add_argument("--z", type=float)
    sp.add_argument("--fidelity", type=float)
    sp.add_argument("--r", type=float)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--rounds", type=int)
    sp.add_argument("--noise-e1", dest="noise_e1", type=float)
    sp.add_argument("--noise-e2", dest="noise_e2", type=float)
    sp.add_argument("--radius-tol", dest="radius_tol", type=float)

    sp = sub.add_parser("basin", help="attractor classes on a fidelity plane")
    common(sp)
    sp.add_argument("--fidelity", type=float)
    sp.add_argument("--rmax", type=float)
    sp.add_argument("--nr", type=int)
    sp.add_argument("--ntheta", type=int)
    sp.add_argument("--rounds", type=int)
    sp.add_argument("--radius-tol", dest="radius_tol", type=float)

    sp = sub.add_parser("threshold", help="distillation threshold report")
    common(sp)
    sp.add_argument("--mode", choices=["on-axis", "off-axis", "noisy"])
    sp.add_argument("--theta", type=float)
    sp.add_argument("--e1", type=float)
    sp.add_argument("--e2", type=float)

    sp = sub.add_parser("curve", help="output-fidelity curves vs input fidelity")
    common(sp)
    sp.add_argument("--e1", type=float, action="append",
                    help="one-qubit gate error; repeat for several settings")
    sp.add_argument("--e2", type=float, action="append",
                    help="two-qubit gate error; repeat for several settings")
    sp.add_argument("--grid", help="input grid as start:stop:count")

    sp = sub.add_parser("cost", help="two-qubit gate-count comparison")
    common(sp)
    sp.add_argument("--e", type=float, help="gate error E1 = E2")
    sp.add_argument("--target", type=float)
    sp.add_argument("--grid", help="input grid as start:stop:count")
    sp.add_argument("--include-one-qubit", dest="include_one_qubit",
                    action="store_const", const=True)

    sp = sub.add_parser("gain", help="one-round fidelity gain along r or theta")
    common(sp)
    sp.add_argument("--fidelity", type=float)
    sp.add_argument("--sweep", choices=["r", "theta"])
    sp.add_argument("--theta", type=float, help="fixed angle for an r sweep")
    sp.add_argument("--r", type=float, help="fixed radius for a theta sweep")
    sp.add_argument("--grid", help="sweep grid as start:stop:count")

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve(args, args.command)
        if getattr(args, "save_config", None):
            cfg.to_file(args.save_config)
        _RUNNERS[args.command](cfg)
    except (UnreachableTargetError, InvalidRegimeError, NoDistillationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
