"""Command-line front end.

Subcommands: compute, scan, resonance, corridor, rangefind, oracle.
Exit codes: 0 success, 1 runtime failure, 2 validation failure.

Configuration can come from flags or from --config pointing at either a flat
key=value file or a JSON object; flags win over the file.  Every file-writing
command drops a sidecar manifest (<stem>.manifest.json) with the full
configuration echo, seeds, method flags, and content hashes of the outputs,
and the same configuration plus seed reproduces byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import DetectorConfig, Scenario, parse_scenario
from .entanglement import assemble, negativity
from .errors import UdwHarvestError, UnsupportedScenarioError, ValidationError
from .output import RunManifest, WallClock, fmt_value, manifest_path_for, write_csv
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings
from .saddle import criterion, critical_distance, resonant_omega
from .scan import (
    CorridorSweep,
    corridor_sweep,
    grid_scan,
    rangefind_corridor,
    rangefind_gradient,
    rangefind_sudden_death,
    resonance_locus,
)

CONFIG_KEYS = ("kappa", "sigma", "omega", "L", "eta0", "scenario")


def load_config_file(path) -> dict:
    """Flat key=value lines or a JSON object; decimal numbers with optional
    exponent, never locale-dependent."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    data = {}
    if stripped.startswith("{"):
        raw = json.loads(text)
        if not isinstance(raw, dict):
            raise ValidationError("JSON config must be an object")
        data.update(raw)
    else:
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            data[key.strip()] = value.strip()
    out = {}
    for key, value in data.items():
        key = key.strip()
        if key == "scenario":
            out[key] = str(value)
        elif key in CONFIG_KEYS or key in ("threads", "seed"):
            out[key] = float(value) if key not in ("threads", "seed") else int(value)
        else:
            raise ValidationError(f"unknown config key {key!r}")
    return out


def build_detector_config(args) -> DetectorConfig:
    merged = {}
    if args.config:
        merged.update(load_config_file(args.config))
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    missing = [k for k in ("kappa", "sigma", "omega", "L") if k not in merged]
    if missing:
        raise ValidationError(f"missing required parameters: {', '.join(missing)}")
    merged.setdefault("eta0", 0.01)
    merged.setdefault("scenario", "antiparallel")
    return DetectorConfig(
        kappa=float(merged["kappa"]), sigma=float(merged["sigma"]),
        omega=float(merged["omega"]), L=float(merged["L"]),
        eta0=float(merged["eta0"]), scenario=parse_scenario(merged["scenario"]),
    )


def settings_from(args) -> QuadratureSettings:
    return DEFAULT_SETTINGS


def write_table(args, header, rows, manifest: RunManifest, what: str):
    out = Path(args.out) if args.out else Path(f"{what}.{args.format}")
    if args.format == "csv":
        digest = write_csv(out, header, rows)
    else:
        payload = json.dumps({"header": list(header),
                              "rows": [[_json_cell(v) for v in r] for r in rows]},
                             sort_keys=True, indent=2) + "\n"
        out.write_text(payload, encoding="ascii", newline="\n")
        import hashlib
        digest = hashlib.sha256(payload.encode("ascii")).hexdigest()
    manifest.register_output(out, digest)
    manifest.write(manifest_path_for(out))
    print(f"wrote {out} and {manifest_path_for(out)}", file=sys.stderr)
    return out


def _json_cell(v):
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
    return v


# ---------------------------------------------------------------------------
# subcommands


def cmd_compute(args):
    cfg = build_detector_config(args)
    state = assemble(cfg, method=args.method)
    n_val = negativity(state)
    report = {
        "config": {
            "kappa": cfg.kappa, "sigma": cfg.sigma, "omega": cfg.omega,
            "L": cfg.L, "eta0": cfg.eta0, "scenario": cfg.scenario.value,
        },
        "dimensionless": None,
        "A_scaled": state.A,
        "X_scaled": {
            "re": _json_cell(state.X.real), "im": _json_cell(state.X.imag),
            "residue_free": {"re": state.residue_free.real,
                             "im": state.residue_free.imag},
            "residue": {"re": _json_cell(state.residue.real),
                        "im": _json_cell(state.residue.imag)},
            "log10_abs": _json_cell(state.x_magnitude_log10),
        },
        "negativity_scaled": _json_cell(n_val),
        "entangled": bool(n_val > 0),
        "spacelike_ok": cfg.spacelike_ok,
        "diagnostics": {k: str(v) for k, v in state.diagnostics.items()},
        "tool": "udwharvest", "version": __version__,
    }
    if cfg.kappa > 0:
        report["dimensionless"] = {"a": cfg.kappa * cfg.L, "w": cfg.w,
                                   "g": cfg.kappa * cfg.sigma,
                                   "b": 1 - cfg.kappa * cfg.L / 2}
    try:
        crit = criterion(cfg)
        report["criterion"] = {"entangled": crit.entangled, "lhs": crit.lhs,
                               "rhs": crit.rhs, "margin": crit.margin}
    except UnsupportedScenarioError:
        report["criterion"] = None
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="ascii", newline="\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(payload)
    return 0


def cmd_scan(args):
    grid = grid_scan(args.scenario, a_range=(None, args.a_max),
                     w_range=(None, args.w_max), n_a=args.na, n_w=args.nw,
                     g=args.g, sigma=args.sigma, method=args.method,
                     threads=args.threads)
    manifest = RunManifest(command="scan", config=grid.manifest,
                           settings={"quadrature": "default"},
                           seeds={"seed": args.seed},
                           method_flags={"method": args.method,
                                         "threads": args.threads})
    header = ["a", "w", "N_scaled", "entangled", "method", "flags", "log10_absX"]
    out = write_table(args, header, list(grid.rows()), manifest, "scan")
    if args.plot:
        from .figures import negativity_map
        png = out.with_suffix(".png")
        negativity_map(grid, png)
        print(f"wrote {png}", file=sys.stderr)
    return 0


def cmd_resonance(args):
    w_vals = np.linspace(args.w_min, args.w_max, args.n)
    locus = resonance_locus(w_vals, kappa=args.kappa, sigma=args.sigma)
    manifest = RunManifest(command="resonance",
                           config={"kappa": args.kappa, "sigma": args.sigma,
                                   "w_min": args.w_min, "w_max": args.w_max,
                                   "n": args.n},
                           settings={})
    rows = [tuple(float(v) for v in row) for row in locus]
    out = write_table(args, ["w", "a_crit", "L_crit"], rows, manifest, "resonance")
    if args.plot:
        from .figures import resonance_figure
        png = out.with_suffix(".png")
        resonance_figure(locus, png)
        print(f"wrote {png}", file=sys.stderr)
    return 0


def cmd_corridor(args):
    L_crit = critical_distance(args.kappa, args.sigma, args.omega)
    span = args.span * L_crit
    sweep = corridor_sweep(args.kappa, args.sigma, args.omega,
                           deltaL_range=(-span, span), n_points=args.n)
    manifest = RunManifest(
        command="corridor",
        config={"kappa": args.kappa, "sigma": args.sigma, "omega": args.omega,
                "span_fraction": args.span, "n": args.n},
        settings={"L_crit": sweep.L_crit},
        method_flags={"sign_change_interval": sweep.sign_change_interval},
    )
    out = write_table(args, ["deltaL", "reX_scaled", "imX_scaled"],
                      list(sweep.rows()), manifest, "corridor")
    if args.plot:
        from .figures import corridor_figure
        png = out.with_suffix(".png")
        corridor_figure(sweep, png)
        print(f"wrote {png}", file=sys.stderr)
    return 0


def cmd_rangefind(args):
    if args.protocol == "corridor":
        L_crit = critical_distance(args.kappa, args.sigma, args.omega)
        span = args.span * L_crit
        offsets = np.linspace(-span, span, args.n_ens)
        offsets = offsets[np.abs(offsets) > 1e-9 * L_crit]  # never exactly on resonance
        cfgs = [DetectorConfig(kappa=args.kappa, sigma=args.sigma,
                               omega=args.omega, L=L_crit + float(d),
                               eta0=args.eta0, scenario=Scenario.ANTIPARALLEL)
                for d in offsets]
        verdicts = rangefind_corridor(cfgs, n_shots=args.n_shots, seed=args.seed)
        manifest = RunManifest(
            command="rangefind corridor",
            config={"kappa": args.kappa, "sigma": args.sigma,
                    "omega": args.omega, "eta0": args.eta0,
                    "span_fraction": args.span, "n_ens": args.n_ens},
            settings={"L_crit": L_crit},
            seeds={"seed": args.seed, "n_shots": args.n_shots},
        )
        rows = [(v.index, v.deltaL, v.estimate_4_re_x, v.standard_error,
                 int(v.at_critical_distance), v.true_re_x) for v in verdicts]
        out = write_table(args, ["index", "deltaL", "estimate_4ReX",
                                 "stderr", "at_Lcrit", "true_ReX"],
                          rows, manifest, "rangefind")
        if args.plot:
            from .figures import rangefind_figure
            png = out.with_suffix(".png")
            rangefind_figure(verdicts, png)
            print(f"wrote {png}", file=sys.stderr)
        return 0

    if args.protocol == "sudden-death":
        result = rangefind_sudden_death(args.kappa, args.sigma, args.omega,
                                        delta=args.delta)
        payload = json.dumps({k: _json_cell(v) for k, v in result.items()},
                             sort_keys=True, indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(payload, encoding="ascii", newline="\n")
        else:
            sys.stdout.write(payload)
        return 0

    # gradient
    ref = DetectorConfig(kappa=args.kappa, sigma=args.sigma, omega=args.omega,
                         L=args.L, eta0=args.eta0,
                         scenario=Scenario.ANTIPARALLEL)
    if args.measured_n is None and args.synthetic_dl is None:
        raise ValidationError("gradient protocol needs --measured-n or --synthetic-dl")
    if args.measured_n is not None:
        measured = args.measured_n
    else:
        probe = assemble(ref.replace(L=args.L + args.synthetic_dl), method="quadrature")
        measured = negativity(probe)
    result = rangefind_gradient(ref, measured)
    if args.synthetic_dl is not None:
        result["synthetic_deltaL"] = args.synthetic_dl
        if result["deltaL_estimate"] == result["deltaL_estimate"]:
            result["recovery_error"] = abs(result["deltaL_estimate"] - args.synthetic_dl)
    payload = json.dumps({k: _json_cell(v) for k, v in result.items()},
                         sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(payload, encoding="ascii", newline="\n")
    else:
        sys.stdout.write(payload)
    return 0


def cmd_oracle(args):
    from .oracles import SUITES, run_suites
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = run_suites(names)
    any_fail = False
    lines = []
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        any_fail |= not r.passed
        lines.append((r.suite, r.label, r.reference, r.candidate,
                      r.rel_error, r.tolerance, status))
        print(f"[{status}] {r.suite:9s} {r.label:55s} rel={r.rel_error:.3e} "
              f"tol={r.tolerance:g}")
    if args.out:
        manifest = RunManifest(command=f"oracle {args.suite}",
                               config={"suite": args.suite}, settings={})
        write_table(args, ["suite", "label", "reference", "candidate",
                           "rel_error", "tolerance", "status"], lines,
                    manifest, "oracle")
    return 1 if any_fail else 0


# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", help="key=value or JSON configuration file")
    p.add_argument("--out", help="output path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--method", choices=("saddle", "quadrature"),
                   default="quadrature")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", action="store_true",
                   help="also render a figure next to the output file")


def _add_physical(p):
    p.add_argument("--kappa", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--L", type=float)
    p.add_argument("--eta0", type=float, default=None)
    p.add_argument("--scenario", default=None)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="udwharvest",
        description="Entanglement harvested by accelerated detector pairs: "
                    "amplitudes, negativity landscapes, resonance structure, "
                    "and rangefinding protocols.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compute", help="single-configuration report (JSON)")
    _add_common(p)
    _add_physical(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("scan", help="negativity over an (a, w) grid")
    _add_common(p)
    p.add_argument("--scenario", default="antiparallel")
    p.add_argument("--na", type=int, default=200)
    p.add_argument("--nw", type=int, default=200)
    p.add_argument("--g", type=float, default=1e-3, help="fixed kappa*sigma")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--a-max", dest="a_max", type=float, default=4.5)
    p.add_argument("--w-max", dest="w_max", type=float, default=math.pi - 0.01)
    p.set_defaults(func=cmd_scan, method="saddle")

    p = sub.add_parser("resonance", help="critical-distance curve")
    _add_common(p)
    p.add_argument("--kappa", type=float, default=1e-3)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--w-min", dest="w_min", type=float, default=1e-2)
    p.add_argument("--w-max", dest="w_max", type=float, default=math.pi - 1e-2)
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("corridor", help="Re X~ sweep around the critical distance")
    _add_common(p)
    p.add_argument("--kappa", type=float, default=1e-3)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1250.0)
    p.add_argument("--span", type=float, default=0.5,
                   help="half-range of deltaL as a fraction of L_crit")
    p.add_argument("--n", type=int, default=41)
    p.set_defaults(func=cmd_corridor)

    p = sub.add_parser("rangefind", help="distance-from-entanglement protocols")
    _add_common(p)
    p.add_argument("--protocol", choices=("corridor", "sudden-death", "gradient"),
                   required=True)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.3)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--eta0", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.05,
                   help="sudden-death probe offset from 2/kappa")
    p.add_argument("--span", type=float, default=0.3)
    p.add_argument("--n-ens", dest="n_ens", type=int, default=9)
    p.add_argument("--n-shots", dest="n_shots", type=int, default=200000)
    p.add_argument("--measured-n", dest="measured_n", type=float, default=None)
    p.add_argument("--synthetic-dl", dest="synthetic_dl", type=float, default=None)
    p.set_defaults(func=cmd_rangefind)

    p = sub.add_parser("oracle", help="cross-validation suites with pass/fail gates")
    _add_common(p)
    p.add_argument("--suite", choices=("saddle", "shift", "assembly", "all"),
                   default="all")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        with WallClock():
            return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UdwHarvestError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
