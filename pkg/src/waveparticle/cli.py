"""Command-line surface: measures, experiments, sweeps, verification."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io, measures
from .channels import ReferenceObservable, dephase
from .experiments import (
    ExperimentReport,
    MziConfig,
    WernerInput,
    dce_analyze,
    measurement_model,
    morphing_scan,
    mzi_run,
    wave_detector_run,
)
from .nonlocality import chsh_nl, concurrence
from .verify import run_checks

EXPERIMENTS = ("mzi", "dce", "wave-detector", "measurement-model", "morphing")
SWEEPABLE = {
    "mzi": ("phi",),
    "dce": ("bs2-alpha", "phi"),
    "wave-detector": ("x",),
    "morphing": ("eta",),
    "measurement-model": (),
}
_PRINCIPAL_STATE = {
    "mzi": "pre_detector",
    "dce": "quanton",
    "wave-detector": "input",
    "measurement-model": "quanton",
    "morphing": "quanton",
}
_AMP_NORM_TOL = 1e-4


def _amplitudes(args) -> np.ndarray:
    parts = (args.amp_alpha_re, args.amp_alpha_im,
             args.amp_beta_re, args.amp_beta_im)
    if all(p is None for p in parts):
        return np.array([2 ** -0.5, 2 ** -0.5], dtype=complex)
    filled = [0.0 if p is None else float(p) for p in parts]
    amps = np.array([complex(filled[0], filled[1]),
                     complex(filled[2], filled[3])], dtype=complex)
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    if abs(norm_sq - 1.0) > _AMP_NORM_TOL:
        raise ValueError(f"amplitudes are not normalized: |a|^2+|b|^2 = {norm_sq!r}")
    return amps / np.sqrt(norm_sq)


def _run_experiment(name: str, args) -> ExperimentReport:
    if name == "mzi":
        return mzi_run(MziConfig(phi=args.phi, bs2=args.bs2))
    if name == "dce":
        if args.bs2_alpha is None:
            raise ValueError("--bs2-alpha is required for dce")
        return dce_analyze(args.bs2_alpha, args.phi)
    if name == "wave-detector":
        return wave_detector_run(WernerInput(args.x, _amplitudes(args)))
    if name == "measurement-model":
        if args.click is None:
            return measurement_model(_amplitudes(args), "bob")
        return measurement_model(_amplitudes(args), "alice", outcome=args.click)
    if name == "morphing":
        if args.eta is None:
            raise ValueError("--eta is required for morphing")
        return morphing_scan(_amplitudes(args), args.eta)
    raise ValueError(f"unknown experiment {name!r}")


def _extend_with_q(report: ExperimentReport, q: float | None) -> None:
    if q is None or min(abs(q - 1.0), abs(q - 2.0)) < 1e-12:
        return
    state = report.states[_PRINCIPAL_STATE[report.name]]
    dim = state.matrix.shape[0]
    obs = ReferenceObservable.computational(dim)
    report.scalars["q"] = float(q)
    report.scalars["wavelike_q"] = measures.wavelike_info(state.matrix, obs, q)
    report.scalars["particlelike_q"] = measures.particlelike_info(state.matrix, obs, q)


def cmd_measures(args) -> int:
    loaded = io.load_state(args.state)
    dim = loaded.density.shape[0]
    if args.basis is None:
        obs = ReferenceObservable.computational(dim)
    else:
        obs = io.load_observable(args.basis)
        if obs.dim != dim:
            raise ValueError(f"basis dimension {obs.dim} does not match state dimension {dim}")
    q = 1.0 if args.q is None else float(args.q)
    rho = loaded.density
    entropy = measures.tsallis_entropy(rho, q)
    dephased_info = measures.information(dephase(rho, obs), q)
    wavelike = measures.wavelike_info(rho, obs, q)
    particlelike = measures.particlelike_info(rho, obs, q)
    residual = abs(wavelike + particlelike - measures.max_entropy(dim, q))
    payload = {
        "q": q,
        "dims": [int(d) for d in loaded.dims],
        "entropy": entropy,
        "dephased_information": dephased_info,
        "wavelike": wavelike,
        "particlelike": particlelike,
        "complementarity_residual": residual,
    }
    if tuple(loaded.dims) == (2, 2):
        b_max, n_l = chsh_nl(rho)
        payload["chsh_max"] = b_max
        payload["nonlocality"] = n_l
        payload["concurrence"] = concurrence(rho)
    sys.stdout.write(io.dumps(payload))
    return 0


def cmd_experiment(args) -> int:
    report = _run_experiment(args.name, args)
    _extend_with_q(report, args.q)
    sys.stdout.write(io.dumps(io.report_payload(report)))
    return 0


def cmd_sweep(args) -> int:
    allowed = SWEEPABLE[args.name]
    if args.param not in allowed:
        options = ", ".join(allowed) if allowed else "none"
        raise ValueError(f"cannot sweep {args.param!r} for {args.name}; options: {options}")
    if args.steps < 2:
        raise ValueError(f"steps must be at least 2, got {args.steps}")
    if not args.start <= args.stop:
        raise ValueError(f"start {args.start!r} exceeds stop {args.stop!r}")
    field = args.param.replace("-", "_")
    grid = np.linspace(args.start, args.stop, args.steps)
    header: list[str] = []
    rows: list[list[str]] = []
    for value in grid:
        setattr(args, field, float(value))
        report = _run_experiment(args.name, args)
        _extend_with_q(report, args.q)
        if not header:
            header = [args.param, *report.scalars.keys()]
        rows.append([io.format_float(value),
                     *(io.format_float(v) for v in report.scalars.values())])
    io.write_csv(args.out, header, rows)
    sys.stdout.write(f"wrote {len(rows)} rows to {args.out}\n")
    return 0


def cmd_verify(args) -> int:
    results = run_checks()
    all_passed = all(r.passed for r in results)
    if args.json:
        payload = {
            "checks": [
                {"name": r.name, "passed": r.passed,
                 "residual": r.residual, "tolerance": r.tolerance,
                 "detail": r.detail}
                for r in results
            ],
            "passed": all_passed,
            "failures": sum(not r.passed for r in results),
        }
        sys.stdout.write(io.dumps(payload))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            sys.stdout.write(
                f"{status} {r.name} residual={io.format_float(r.residual)} "
                f"tolerance={io.format_float(r.tolerance)} ({r.detail})\n")
        sys.stdout.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, default=None,
                        help="entropy order (default 1)")
    common.add_argument("--json", action="store_true",
                        help="machine-readable JSON output")

    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--phi", type=float, default=0.0,
                       help="relative phase in radians")
    flags.add_argument("--bs2", choices=["present", "absent"], default="present",
                       help="output beam splitter mode (mzi)")
    flags.add_argument("--bs2-alpha", dest="bs2_alpha", type=float, default=None,
                       help="output splitter mixing angle in radians (dce)")
    flags.add_argument("--x", type=float, default=1.0,
                       help="mixing weight of the pure part (wave-detector)")
    flags.add_argument("--amp-alpha-re", dest="amp_alpha_re", type=float, default=None)
    flags.add_argument("--amp-alpha-im", dest="amp_alpha_im", type=float, default=None)
    flags.add_argument("--amp-beta-re", dest="amp_beta_re", type=float, default=None)
    flags.add_argument("--amp-beta-im", dest="amp_beta_im", type=float, default=None)
    flags.add_argument("--eta", type=float, default=None,
                       help="informer overlap in [0, 1] (morphing)")
    flags.add_argument("--click", type=int, default=None,
                       help="condition on this detector outcome (measurement-model)")

    parser = argparse.ArgumentParser(
        prog="waveparticle",
        description="Wave/particle information measures and interferometer models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_measures = sub.add_parser("measures", parents=[common],
                                help="information measures of a state file")
    p_measures.add_argument("state", help="state file (JSON)")
    p_measures.add_argument("--basis", default=None,
                            help="reference observable file (JSON)")
    p_measures.set_defaults(func=cmd_measures)

    p_exp = sub.add_parser("experiment", parents=[common, flags],
                           help="run a named scenario")
    p_exp.add_argument("name", choices=EXPERIMENTS)
    p_exp.set_defaults(func=cmd_experiment)

    p_sweep = sub.add_parser("sweep", parents=[common, flags],
                             help="sweep one parameter to CSV")
    p_sweep.add_argument("name", choices=EXPERIMENTS)
    p_sweep.add_argument("--param", required=True,
                         help="parameter to sweep (flag name without dashes)")
    p_sweep.add_argument("--start", type=float, required=True)
    p_sweep.add_argument("--stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run the verification suite")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
