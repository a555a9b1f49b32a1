"""Command-line interface.

Subcommands: steady (mean-field state), point (drift/diffusion/covariance at
one parameter point), sweep (custom parameter sweep), preset (bundled
figure-style studies), wigner (phase-space marginals), oracle (Monte Carlo
covariance check).  Exit codes: 0 success, 2 bad specification, 3 numerical
failure at one or more points (results are still written).
"""

from __future__ import annotations

import argparse
import cmath
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constants import MHZ
from .dynamics import build_full_drift, build_reduced_drift, is_stable, solve_lyapunov
from .errors import CombtangleError, DomainError, ScenarioError
from .measures import correlation_report, reduce_cm
from .model import EffectiveCouplings, effective_couplings
from .oracle import simulate_ensemble, spec_for
from .readout import ReadoutChannel, joint_output_covariance
from .scenario import default_scenario, load_scenario, scenario_hash
from .semiclassical import steady_state
from .sweep import (DEFAULT_OUTPUTS, SweepAxis, SweepSpec, WignerJob,
                    figure_preset, preset_names, run_sweep, run_wigner_job,
                    to_csv, to_json, write_result)

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_NUMERICAL = 3


def _load_params(args):
    if getattr(args, "scenario", None):
        return load_scenario(args.scenario)
    return default_scenario()


def _couplings(args, params) -> EffectiveCouplings:
    """Effective couplings from explicit flags, else from the scenario drive."""
    if args.G_p is not None or args.G_q is not None:
        return EffectiveCouplings(G_p=(args.G_p or 0.0) * MHZ,
                                  G_q=(args.G_q or 0.0) * MHZ)
    state = steady_state(params)
    return effective_couplings(params, state.mean_k)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _polar(z: complex) -> dict:
    return {"modulus": abs(z), "phase": cmath.phase(z)}


def cmd_steady(args) -> int:
    params = _load_params(args)
    state = steady_state(params, free_phase=args.free_phase)
    doc = {
        "regime": state.regime.value,
        "threshold_MHz": (state.threshold / MHZ
                          if np.isfinite(state.threshold) else "inf"),
        "near_threshold": state.near_threshold,
        "phases_determined": state.phases_determined,
        "free_phase": state.free_phase,
        "amplitudes": {m: _polar(state.mean(m)) for m in "krpq"},
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_point(args) -> int:
    params = _load_params(args)
    eff = _couplings(args, params)
    if args.full:
        dd = build_full_drift(params, steady_state(params))
    else:
        dd = build_reduced_drift(eff, params)
    verdict = is_stable(dd)
    ev = dd.eigenvalues()
    doc = {
        "scenario": scenario_hash(params),
        "mode_order": list(dd.mode_order),
        "G_p_MHz": eff.G_p / MHZ,
        "G_q_MHz": eff.G_q / MHZ,
        "M": dd.M.tolist(),
        "D": dd.D.tolist(),
        "eigenvalues": [[z.real, z.imag] for z in ev],
        "stable": verdict.stable,
        "abscissa": verdict.abscissa,
        "marginal": verdict.marginal,
    }
    if verdict.stable:
        cm = solve_lyapunov(dd)
        doc["V"] = cm.V.tolist()
        doc["physicality_spectrum"] = cm.physicality_spectrum().tolist()
        if not args.full:
            doc["report"] = correlation_report(cm, eff).to_flat_dict()
        if args.readout is not None:
            g, kappa_c = (x * MHZ for x in args.readout)
            ch = ReadoutChannel(g=g, kappa_c=kappa_c)
            v_pq = reduce_cm(cm, ("p", "q")).matrix if not args.full else None
            if v_pq is None:
                idx = [2 * dd.mode_order.index("p") + k for k in (0, 1)] + \
                      [2 * dd.mode_order.index("q") + k for k in (0, 1)]
                v_pq = cm.V[np.ix_(idx, idx)]
            doc["readout_output_V_pq"] = joint_output_covariance(
                v_pq, ch, ch).tolist()
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    params = _load_params(args)
    eff = _couplings(args, params)
    axes = tuple(SweepAxis(p[0], float(p[1]), float(p[2]), int(float(p[3])))
                 for p in args.param)
    outputs = (tuple(args.outputs.split(",")) if args.outputs
               else DEFAULT_OUTPUTS)
    spec = SweepSpec(params=params, G_p=eff.G_p, G_q=eff.G_q, axes=axes,
                     outputs=outputs, label="sweep")
    result = run_sweep(spec, threads=args.threads)
    text = to_csv(result) if args.format == "csv" else to_json(result)
    _emit(text, args.out)
    return EXIT_NUMERICAL if result.n_errors else EXIT_OK


def _write_wigner(job: WignerJob, out_prefix: str) -> None:
    grids = run_wigner_job(job)
    sidecar = {"vacuum_radius": 1.0, "pairs": {}}
    for key, grid in grids.items():
        path = Path(f"{out_prefix}_{key}.csv")
        with open(path, "w", newline="") as fh:
            fh.write(f"{grid.labels[0]},{grid.labels[1]},density\n")
            for i, x in enumerate(grid.axis1):
                for j, y in enumerate(grid.axis2):
                    fh.write(f"{x:.12g},{y:.12g},{grid.values[i, j]:.12g}\n")
        ell = grid.contour_1e
        sidecar["pairs"][key] = {
            "csv": path.name,
            "contour": {"center": list(ell.center),
                        "semi_major": ell.semi_major,
                        "semi_minor": ell.semi_minor,
                        "angle_rad": ell.angle},
            "squeezed": grid.squeezed,
            "integral": grid.integral(),
        }
    Path(f"{out_prefix}_contours.json").write_text(
        json.dumps(sidecar, indent=2) + "\n")


def cmd_preset(args) -> int:
    kappa_r = tuple(args.kappa_r_range) if args.kappa_r_range else None
    spec = figure_preset(args.name, kappa_r_MHz=kappa_r)
    if isinstance(spec, WignerJob):
        _write_wigner(spec, args.out or "fig7")
        return EXIT_OK
    result = run_sweep(spec, threads=args.threads)
    text = to_csv(result) if args.format == "csv" else to_json(result)
    _emit(text, args.out)
    return EXIT_NUMERICAL if result.n_errors else EXIT_OK


def cmd_wigner(args) -> int:
    params = _load_params(args)
    eff = _couplings(args, params)
    job = WignerJob(params=params, G_p=eff.G_p, G_q=eff.G_q,
                    n_points=args.points, extent_sigmas=args.extent)
    _write_wigner(job, args.out or "wigner")
    return EXIT_OK


def cmd_oracle(args) -> int:
    params = _load_params(args)
    eff = _couplings(args, params)
    dd = build_reduced_drift(eff, params)
    spec = spec_for(dd, n_trajectories=args.trajectories, seed=args.seed)
    estimate = simulate_ensemble(dd, spec)
    reference = solve_lyapunov(dd)
    dist = estimate.frobenius_distance(reference)
    doc = {
        "n_trajectories": estimate.n_trajectories,
        "seed": args.seed,
        "dt": spec.dt,
        "t_end": spec.t_end,
        "V_estimate": estimate.covariance.V.tolist(),
        "std_err": estimate.std_err.tolist(),
        "frobenius_distance": dist,
        "frobenius_relative": dist / float(np.linalg.norm(reference.V)),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combtangle",
        description="steady-state quantum correlations of a driven "
                    "magnon-skyrmion frequency comb")
    parser.add_argument("--version", action="version",
                        version=f"combtangle {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, couplings=True):
        p.add_argument("--scenario", help="scenario file (defaults to the "
                                          "bundled reference scenario)")
        p.add_argument("--out", help="output file (stdout if omitted)")
        if couplings:
            p.add_argument("--G-p", dest="G_p", type=float,
                           help="effective confluence coupling /2pi in MHz")
            p.add_argument("--G-q", dest="G_q", type=float,
                           help="effective splitting coupling /2pi in MHz")

    p = sub.add_parser("steady", help="mean-field steady state as JSON")
    common(p, couplings=False)
    p.add_argument("--free-phase", type=float, default=0.0,
                   help="free skyrmion phase above threshold (rad)")
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("point", help="drift, diffusion and covariance at one point")
    common(p)
    p.add_argument("--full", action="store_true",
                   help="four-mode system including the driven mode")
    p.add_argument("--readout", nargs=2, type=float, metavar=("G", "KAPPA_C"),
                   help="append probe output covariance for readout "
                        "coupling/linewidth (/2pi, MHz)")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="sweep one or two parameters")
    common(p)
    p.add_argument("--param", nargs=4, action="append", required=True,
                   metavar=("NAME", "START", "STOP", "POINTS"),
                   help="swept axis; repeat for a two-axis sweep")
    p.add_argument("--outputs", help="comma-separated output columns")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="run a bundled parameter study")
    p.add_argument("name", choices=preset_names())
    p.add_argument("--out", help="output file (or prefix for fig7)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--kappa-r-range", nargs=3, type=float,
                   metavar=("START", "STOP", "POINTS"),
                   help="skyrmion linewidth axis for fig4 (/2pi, MHz)")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("wigner", help="phase-space marginals of the (p, q) pair")
    common(p)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--extent", type=float, default=6.0,
                   help="grid half-width in standard deviations")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("oracle", help="Monte Carlo covariance cross-check")
    common(p)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trajectories", type=int, default=20000)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, DomainError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except CombtangleError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
