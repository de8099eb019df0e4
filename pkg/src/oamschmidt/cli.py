"""Command-line surface: spectrum evaluation, inverse design, parameter
sweeps, postselection analysis and target inspection.

All output files, including the per-run manifest.json recording the resolved
configuration, are byte-reproducible for a fixed seed and configuration.

Exit codes: 0 success, 2 configuration error, 3 physics/numerics error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import load_config
from .engine import joint_radial_distribution, postselected_spectrum, postselection_fraction, schmidt_spectrum
from .errors import ConfigError, OamSchmidtError
from .metrics import TARGET_SHAPES, entanglement_of_formation, make_target, r_squared, schmidt_number
from .optimize import SWEEP_PARAMETERS, generation_accuracy, sweep

EXIT_CONFIG = 2
EXIT_PHYSICS = 3


def _fmt(x):
    return repr(float(x))


def _write_table(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_spectrum(path, spectrum):
    _write_table(path, ("l", "S_l"),
                 [(int(l), float(s)) for l, s in zip(spectrum.l_values, spectrum.values)])


def _write_manifest(out_dir, command, cfg, seed, outputs, extra=None):
    manifest = {
        "command": command,
        "tool_version": __version__,
        "master_seed": seed,
        "config_path": str(cfg.path),
        "config": cfg.snapshot(),
        "outputs": [str(p.name) for p in outputs],
    }
    if extra:
        manifest.update(extra)
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_spectrum(args):
    cfg = load_config(args.config)
    out = _out_dir(args)
    crystal = cfg.crystal()
    pump = cfg.pump(require_coefficients=True)
    d = cfg.half_window()
    grids = cfg.grids(pump, crystal, d, tier=args.grid_tier)
    spectrum = schmidt_spectrum(pump, crystal, d, grids=grids)

    spectrum_path = out / "spectrum.csv"
    _write_spectrum(spectrum_path, spectrum)
    print(f"E_f = {entanglement_of_formation(spectrum):.4f} bits")
    print(f"K_a = {schmidt_number(spectrum):.4f}")
    metrics = {
        "E_f_bits": entanglement_of_formation(spectrum),
        "K_a": schmidt_number(spectrum),
        "grid": spectrum.grid_meta,
    }
    if cfg.has_target():
        target = cfg.target()
        metrics["R2_percent"] = r_squared(target, spectrum)
        print(f"R^2 = {metrics['R2_percent']:.2f} %")
    metrics_path = out / "metrics.json"
    metrics_path.write_text(json.dumps(metrics, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    _write_manifest(out, "spectrum", cfg, None, [spectrum_path, metrics_path])
    return 0


def cmd_optimize(args):
    cfg = load_config(args.config)
    out = _out_dir(args)
    crystal = cfg.crystal()
    pump = cfg.pump()
    target = cfg.target()
    swarm = cfg.swarm(seed=args.seed)
    result = generation_accuracy(
        target, cfg.n_modes(), pump, crystal, swarm, refine=not args.skip_refine
    )
    spectrum_path = out / "spectrum.csv"
    _write_spectrum(spectrum_path, result.spectrum)
    result_path = out / "result.json"
    payload = result.to_dict()
    payload["grid"] = result.spectrum.grid_meta
    payload["E_f_bits"] = entanglement_of_formation(result.spectrum)
    payload["K_a"] = schmidt_number(result.spectrum)
    result_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"G = {result.G:.2f} %  (seed {swarm.seed}, {result.evaluation_count} evaluations)")
    _write_manifest(out, "optimize", cfg, swarm.seed, [spectrum_path, result_path])
    return 0


def cmd_sweep(args):
    cfg = load_config(args.config)
    out = _out_dir(args)
    crystal = cfg.crystal()
    pump = cfg.pump()
    target = cfg.target()
    swarm = cfg.swarm(seed=args.seed)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --values list {args.values!r}: {exc}") from exc
    points = sweep(
        args.parameter, values, target, pump, crystal, swarm,
        n_seeds=args.seeds_per_point, reoptimize_theta=args.reoptimize_theta,
    )
    curve_path = out / "curve.csv"
    _write_table(curve_path, (args.parameter, "G_percent"),
                 [(p.value, p.G) for p in points])
    for p in points:
        print(f"{args.parameter} = {p.value:g}: G = {p.G:.2f} %")
    _write_manifest(out, "sweep", cfg, swarm.seed, [curve_path],
                    extra={"parameter": args.parameter, "values": values})
    return 0


def cmd_postselect(args):
    cfg = load_config(args.config)
    out = _out_dir(args)
    crystal = cfg.crystal()
    pump = cfg.pump(require_coefficients=False)
    d = cfg.half_window()
    try:
        ratios = [float(v) for v in args.ratios.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --ratios list {args.ratios!r}: {exc}") from exc
    grids = cfg.grids(pump, crystal, d, tier=args.grid_tier)
    true_spectrum = schmidt_spectrum(pump, crystal, d, grids=grids)
    outputs = []
    true_path = out / "spectrum_true.csv"
    _write_spectrum(true_path, true_spectrum)
    outputs.append(true_path)
    fractions = []
    for ratio in ratios:
        tag = f"{ratio:g}".replace(".", "p")
        w_s = ratio * pump.waist
        joint = joint_radial_distribution(pump, crystal, ratio, P_max=args.p_max, grids=grids)
        joint_path = out / f"joint_radial_wr{tag}.csv"
        header = ["p_s\\p_i"] + [str(p) for p in range(args.p_max + 1)]
        rows = [[str(p_s)] + [float(v) for v in joint.matrix[p_s]]
                for p_s in range(args.p_max + 1)]
        _write_table(joint_path, header, rows)
        outputs.append(joint_path)
        post = postselected_spectrum(pump, crystal, w_s, d, grids=grids)
        post_path = out / f"spectrum_postselected_wr{tag}.csv"
        _write_spectrum(post_path, post)
        outputs.append(post_path)
        frac = postselection_fraction(pump, crystal, w_s, d, grids=grids)
        fractions.append((ratio, frac))
        print(f"w_s/w_p = {ratio:g}: postselected fraction = {frac:.6f}")
    frac_path = out / "postselected_fraction.csv"
    _write_table(frac_path, ("w_ratio", "fraction"), fractions)
    outputs.append(frac_path)
    _write_manifest(out, "postselect", cfg, None, outputs, extra={"ratios": ratios})
    return 0


def cmd_targets(args):
    target = make_target(args.shape, args.width, args.half_window)
    for l, v in zip(target.l_values, target.values):
        print(f"{l},{_fmt(v)}")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        _write_table(out, ("l", "S_l_target"),
                     [(int(l), float(v)) for l, v in zip(target.l_values, target.values)])
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="oamschmidt",
        description="OAM Schmidt spectrum simulator and pump-shape optimizer for type-I SPDC",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out=True):
        p.add_argument("--config", required=True, help="INI configuration file")
        if needs_out:
            p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--grid-tier", choices=("coarse", "fine"), default=None)

    p = sub.add_parser("spectrum", help="evaluate the Schmidt spectrum for fixed coefficients")
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("optimize", help="search pump coefficients for a target spectrum")
    add_common(p)
    p.add_argument("--seed", type=int, default=None, help="override the swarm RNG seed")
    p.add_argument("--skip-refine", action="store_true",
                   help="skip the coordinate-descent refinement stage")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="generation-accuracy curve over theta_p, N or L")
    add_common(p)
    p.add_argument("--parameter", required=True, choices=SWEEP_PARAMETERS)
    p.add_argument("--values", required=True,
                   help="comma-separated list (theta_p in radians, L in meters, N integer)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--seeds-per-point", type=int, default=3)
    p.add_argument("--reoptimize-theta", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("postselect", help="radial joint distributions and p=0-postselected spectra")
    add_common(p)
    p.add_argument("--ratios", default="0.5,1,2", help="comma-separated w_s/w_p ratios")
    p.add_argument("--p-max", type=int, default=10)
    p.set_defaults(func=cmd_postselect)

    p = sub.add_parser("targets", help="print a target spectrum vector")
    p.add_argument("--shape", required=True, choices=TARGET_SHAPES)
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--half-window", type=int, default=150)
    p.add_argument("--out", default=None, help="optional CSV output path")
    p.set_defaults(func=cmd_targets)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OamSchmidtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    raise SystemExit(main())
