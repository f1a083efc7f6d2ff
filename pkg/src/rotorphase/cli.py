"""Command-line surface: state builders, distributions, smoothing, scans,
and the invariant verifier.

Exit codes: 0 success, 1 failed verification, 2 bad input.  Errors are
reported as a JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import basis, coherent, mapping, quasiprob, uncertainty, verify
from .errors import RotorPhaseError
from .theta import ThetaArg, theta2, theta3

DEFAULT_WIDTH = 1.0 / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# state construction


def _space_for(spec: dict, fallback_m: int) -> basis.RotorSpace:
    m_trunc = int(spec.get("M", fallback_m))
    sector = spec.get("sector", basis.BOSON)
    return basis.RotorSpace(m_trunc, sector)


def build_pure_state(spec: dict) -> basis.PureState:
    kind = spec.get("kind")
    if kind == "coherent":
        a = float(spec.get("a", DEFAULT_WIDTH))
        label = coherent.CoherentLabel(
            int(spec["m0"]), float(spec["theta0"]), a
        )
        space = _space_for(
            spec, coherent.default_truncation(a) + abs(label.m0) + 2
        )
        return coherent.coherent_state(space, label)
    if kind == "vacuum":
        a = float(spec.get("a", DEFAULT_WIDTH))
        space = _space_for(spec, coherent.default_truncation(a) + 2)
        return coherent.vacuum(space, a)
    if kind == "eigenstate":
        m = int(spec["m"])
        space = _space_for(spec, max(8, 2 * abs(m) + 4))
        return basis.basis_state(space, m)
    if kind == "superposition":
        parts = spec["components"]
        states = []
        coeffs = []
        for part in parts:
            coeff = part.get("coeff", 1.0)
            if isinstance(coeff, (list, tuple)):
                coeff = complex(coeff[0], coeff[1])
            coeffs.append(complex(coeff))
            states.append(build_pure_state(part["state"]))
        m_trunc = int(spec.get("M", max(s.space.M for s in states)))
        space = basis.RotorSpace(m_trunc, states[0].space.sector)
        total = np.zeros(space.dim, dtype=complex)
        for coeff, state in zip(coeffs, states):
            total += coeff * _embed(state, space)
        return basis.normalized_state(space, total)
    raise RotorPhaseError(f"unknown pure-state kind {kind!r}")


def _embed(state: basis.PureState, space: basis.RotorSpace) -> np.ndarray:
    if state.space.sector != space.sector:
        raise RotorPhaseError("cannot mix sectors in one superposition")
    if state.space.M > space.M:
        raise RotorPhaseError("component basis larger than target basis")
    out = np.zeros(space.dim, dtype=complex)
    offset = space.index_of(float(state.space.labels[0]))
    out[offset : offset + state.space.dim] = state.amplitudes
    return out


def build_state_payload(spec: dict) -> dict:
    """State-spec JSON -> serialized state payload (pure or density)."""
    kind = spec.get("kind")
    if kind == "mixture":
        parts = spec["components"]
        states = [build_pure_state(p["state"]) for p in parts]
        weights = [float(p["weight"]) for p in parts]
        m_trunc = int(spec.get("M", max(s.space.M for s in states)))
        space = basis.RotorSpace(m_trunc, states[0].space.sector)
        pairs = [
            (w, basis.PureState(space, _embed(s, space)))
            for w, s in zip(weights, states)
        ]
        return basis.density_to_json_dict(basis.mixed_density(space, pairs))
    if kind == "thermal":
        beta = float(spec["beta"])
        m_trunc = int(spec.get("M", 16))
        space = basis.RotorSpace(m_trunc, spec.get("sector", basis.BOSON))
        weights = np.exp(-beta * space.labels**2)
        return basis.density_to_json_dict(basis.diagonal_density(space, weights))
    return basis.state_to_json_dict(build_pure_state(spec))


def _load_state_payload(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if "amplitudes" in payload:
        state = basis.state_from_json_dict(payload)
        return basis.pure_density(state)
    if "matrix" in payload:
        return basis.density_from_json_dict(payload)
    raise RotorPhaseError("state file holds neither amplitudes nor a matrix")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_theta(args) -> int:
    fn = theta3 if args.fn == 3 else theta2
    value = fn(ThetaArg(complex(args.z_re, args.z_im), args.tau_im), args.tol)
    print(f"{value.real:.17g} {value.imag:+.17g}j")
    return 0


def _cmd_state_make(args) -> int:
    if args.inline:
        spec = json.loads(args.inline)
    else:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    payload = build_state_payload(spec)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
    print(f"wrote {args.out}")
    return 0


def _cmd_dist_compute(args) -> int:
    rho = _load_state_payload(args.state)
    if args.M is not None and args.M != rho.space.M:
        if args.M < rho.space.M:
            raise RotorPhaseError("requested M smaller than the state's basis")
        big = basis.RotorSpace(args.M, rho.space.sector)
        mat = np.zeros((big.dim, big.dim), dtype=complex)
        off = big.index_of(float(rho.space.labels[0]))
        mat[off : off + rho.space.dim, off : off + rho.space.dim] = rho.entries
        rho = basis.DensityOperator(basis.OperatorMatrix(big, mat))
    space = rho.space
    a = args.a
    n = args.N if args.N is not None else max(64, 4 * space.M)
    s = complex(args.s_re, args.s_im)
    mapping.SParameter(s)  # domain check
    grid = mapping.full_period_grid(n)
    l_max = min(2 * space.M, (n - 1) // 2)
    table = mapping.build_kernel_table(a, l_max, n)
    if s == -1.0:
        dist = quasiprob.husimi(rho, a, grid)
    elif s == 1.0:
        dist = quasiprob.glauber_sudarshan(rho, a, grid, table=table)
    else:
        dist = mapping.expectation_table(rho, s, grid, table)
    if args.format == "json":
        mapping.save_distribution_json(dist, args.out)
    else:
        mapping.save_distribution(dist, args.out)
    summary = quasiprob.distribution_summary(dist)
    summary_path = args.out + ".summary.json"
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=1)
    print(f"wrote {args.out} and {summary_path}")
    return 0


def _cmd_dist_smooth(args) -> int:
    dist = mapping.load_distribution(args.infile)
    u = complex(args.u_re, args.u_im)
    n = dist.grid.n_theta
    l_max = min(2 * dist.space_M, (n - 1) // 2)
    table = mapping.build_kernel_table(dist.a, l_max, n)
    smoothed = quasiprob.smooth(dist, u, table)
    if args.format == "json":
        mapping.save_distribution_json(smoothed, args.out)
    else:
        mapping.save_distribution(smoothed, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_uncertainty_scan(args) -> int:
    rows = uncertainty.scan_delta_U(args.a, args.n)
    space_m = uncertainty.scan_space_M(args.a)
    if args.format == "json":
        uncertainty.save_scan_json(rows, args.a, space_m, args.out)
    else:
        uncertainty.save_scan(rows, args.a, space_m, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, args.tol)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        if not res.passed:
            failed += 1
        print(
            f"{status} {res.suite}/{res.name}: residual {res.residual:.3e} "
            f"(tol {res.tol:.1e})"
        )
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotorphase",
        description="quasiprobability distributions on the cylinder phase space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_theta = sub.add_parser("theta", help="evaluate Jacobi theta functions")
    theta_sub = p_theta.add_subparsers(dest="theta_command", required=True)
    p_eval = theta_sub.add_parser("eval")
    p_eval.add_argument("--fn", type=int, choices=(2, 3), required=True)
    p_eval.add_argument("--z-re", type=float, default=0.0)
    p_eval.add_argument("--z-im", type=float, default=0.0)
    p_eval.add_argument("--tau-im", type=float, required=True)
    p_eval.add_argument("--tol", type=float, default=1e-12)
    p_eval.set_defaults(func=_cmd_theta)

    p_state = sub.add_parser("state", help="build and serialize states")
    state_sub = p_state.add_subparsers(dest="state_command", required=True)
    p_make = state_sub.add_parser("make")
    group = p_make.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", help="path to a state-spec JSON file")
    group.add_argument("--inline", help="state-spec JSON literal")
    p_make.add_argument("--out", required=True)
    p_make.set_defaults(func=_cmd_state_make)

    p_dist = sub.add_parser("dist", help="compute and smooth distributions")
    dist_sub = p_dist.add_subparsers(dest="dist_command", required=True)
    p_compute = dist_sub.add_parser("compute")
    p_compute.add_argument("--state", required=True)
    p_compute.add_argument("--s-re", type=float, required=True)
    p_compute.add_argument("--s-im", type=float, default=0.0)
    p_compute.add_argument("--a", type=float, default=DEFAULT_WIDTH)
    p_compute.add_argument("--M", type=int, default=None)
    p_compute.add_argument("--N", type=int, default=None)
    p_compute.add_argument("--out", required=True)
    p_compute.add_argument("--format", choices=("csv", "json"), default="csv")
    p_compute.set_defaults(func=_cmd_dist_compute)
    p_smooth = dist_sub.add_parser("smooth")
    p_smooth.add_argument("--in", dest="infile", required=True)
    p_smooth.add_argument("--u-re", type=float, required=True)
    p_smooth.add_argument("--u-im", type=float, default=0.0)
    p_smooth.add_argument("--out", required=True)
    p_smooth.add_argument("--format", choices=("csv", "json"), default="csv")
    p_smooth.set_defaults(func=_cmd_dist_smooth)

    p_unc = sub.add_parser("uncertainty", help="uncertainty-slack scans")
    unc_sub = p_unc.add_subparsers(dest="uncertainty_command", required=True)
    p_scan = unc_sub.add_parser("scan")
    p_scan.add_argument("--a", type=float, default=DEFAULT_WIDTH)
    p_scan.add_argument("--n", type=int, default=256)
    p_scan.add_argument("--out", required=True)
    p_scan.add_argument("--format", choices=("csv", "json"), default="csv")
    p_scan.set_defaults(func=_cmd_uncertainty_scan)

    p_verify = sub.add_parser("verify", help="run the invariant battery")
    p_verify.add_argument(
        "--suite",
        default="all",
        choices=("all", "kernel", "hierarchy", "appendix"),
    )
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RotorPhaseError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(payload), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
