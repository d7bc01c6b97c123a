"""Batch command-line front end.

Each subcommand loads JSON inputs, runs the corresponding library
operations, and prints a certificate: the command, digests of every input
file, the computed quantities, and a list of asserted inequalities with both
sides, the tolerance, and a pass flag. Exit status is 0 when every
assertion passes, 1 when one fails, and 2 on malformed input. Identical
inputs and seeds produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .coorbit import coorbit_report, counterexample_kernel, reproducing_kernel
from .coverings import (
    PhaseGrid,
    covering_weights,
    maximal_kernel,
    oscillation,
    validate_covering,
)
from .jsonio import (
    dump_kernel,
    dumps_json,
    file_digest,
    load_covering,
    load_frame,
    load_grid_function,
    load_kernel,
    load_weight_grid,
)
from .kernel_algebra import WeightGrid, compose, norm_A, norm_B, submult_weight_constant
from .mixed_norm import INF, GridFunction, check_exponent, mixed_norm
from .operators import (
    VERTEX_CAP,
    corner_opnorm,
    opnorm_lower_search,
    schur_bound,
    schur_constants,
)
from .oracles import brute_sum_norm_upper
from .sum_space import associate_pairing_sup, intersection_norm, rho_tensor, split_four

__all__ = ["run", "main"]


def _exponent(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return INF
    return check_exponent(float(text))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


class _Inputs:
    """Tracks input files and their digests for the certificate."""

    def __init__(self) -> None:
        self.digests: dict = {}

    def load(self, name: str, path: str, loader):
        obj = loader(_load_json(path))
        self.digests[name] = file_digest(path)
        return obj


def _check_le(name: str, lhs: float, rhs: float, tol: float) -> dict:
    return {
        "name": name,
        "kind": "le",
        "lhs": float(lhs),
        "rhs": float(rhs),
        "tolerance": tol,
        "pass": bool(lhs <= rhs + tol * max(1.0, abs(rhs))),
    }


def _check_eq(name: str, lhs: float, rhs: float, tol: float) -> dict:
    return {
        "name": name,
        "kind": "eq",
        "lhs": float(lhs),
        "rhs": float(rhs),
        "tolerance": tol,
        "pass": bool(abs(lhs - rhs) <= tol * max(1.0, abs(rhs))),
    }


def _check_flag(name: str, flag: bool) -> dict:
    return {
        "name": name,
        "kind": "eq",
        "lhs": 1.0 if flag else 0.0,
        "rhs": 1.0,
        "tolerance": 0.0,
        "pass": bool(flag),
    }


def _certificate(command: str, args, inputs: _Inputs, quantities: dict, checks: list, extra: dict | None = None) -> dict:
    cert = {
        "command": command,
        "version": __version__,
        "tolerance": args.tolerance,
    }
    if hasattr(args, "seed"):
        cert["seed"] = args.seed
    cert["inputs"] = inputs.digests
    cert["quantities"] = quantities
    cert["checks"] = checks
    if extra:
        cert.update(extra)
    return cert


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_norm(args):
    inputs = _Inputs()
    if (args.kernel is None) == (args.function is None):
        raise ValueError("norm needs exactly one of --kernel / --function")
    quantities: dict = {}
    if args.function is not None:
        f = inputs.load("function", args.function, load_grid_function)
        p = _exponent(args.p)
        q = _exponent(args.q)
        quantities["p"] = p
        quantities["q"] = q
        quantities["mixed_norm"] = mixed_norm(f, p, q)
    else:
        K = inputs.load("kernel", args.kernel, load_kernel)
        m = inputs.load("weight", args.weight, load_weight_grid) if args.weight else None
        quantities["norm_A"] = norm_A(K, m)
        quantities["norm_B"] = norm_B(K, m)
    return _certificate("norm", args, inputs, quantities, [])


_CORNER_CONSTANT = {(1.0, 1.0): "c2", (INF, INF): "c1", (1.0, INF): "c3", (INF, 1.0): "c4"}


def _cmd_schur(args):
    inputs = _Inputs()
    K = inputs.load("kernel", args.kernel, load_kernel)
    p = _exponent(args.p)
    q = _exponent(args.q)
    c = schur_constants(K)
    bound = schur_bound(c, p, q)
    lower = opnorm_lower_search(K, p, q, trials=args.trials, seed=args.seed)
    quantities = {
        "c1": c.c1,
        "c2": c.c2,
        "c3": c.c3,
        "c4": c.c4,
        "p": p,
        "q": q,
        "schur_bound": bound,
        "opnorm_lower": lower,
    }
    checks = [_check_le("opnorm_lower_le_schur_bound", lower, bound, args.tolerance)]
    corner = _CORNER_CONSTANT.get((p, q))
    if corner is not None and K.is_nonnegative:
        n1y, n2y = K.Y.shape
        if (p, q) != (1.0, INF) or n1y**n2y <= VERTEX_CAP:
            exact = corner_opnorm(K, p, q)
            quantities["corner_opnorm"] = exact
            checks.append(
                _check_eq(f"corner_opnorm_equals_{corner}", exact, quantities[corner], args.tolerance)
            )
    return _certificate("schur", args, inputs, quantities, checks)


def _cmd_compose(args):
    inputs = _Inputs()
    K = inputs.load("left", args.left, load_kernel)
    L = inputs.load("right", args.right, load_kernel)
    weight_args = (args.weight_out, args.weight_left, args.weight_right)
    if sum(x is not None for x in weight_args) not in (0, 3):
        raise ValueError("compose weights: give all of --weight-out/--weight-left/--weight-right or none")
    product = compose(K, L)
    if args.weight_out is not None:
        tau = inputs.load("weight_out", args.weight_out, load_weight_grid)
        omega = inputs.load("weight_left", args.weight_left, load_weight_grid)
        sigma = inputs.load("weight_right", args.weight_right, load_weight_grid)
        factor = submult_weight_constant(tau, omega, sigma)
    else:
        tau = omega = sigma = None
        factor = 1.0
    nb_left = norm_B(K, omega)
    nb_right = norm_B(L, sigma)
    nb_product = norm_B(product, tau)
    quantities = {
        "norm_b_left": nb_left,
        "norm_b_right": nb_right,
        "norm_b_product": nb_product,
        "factor_constant": factor,
    }
    checks = [
        _check_le("product_submultiplicative", nb_product, factor * nb_left * nb_right, args.tolerance)
    ]
    return _certificate("compose", args, inputs, quantities, checks, {"kernel": dump_kernel(product)})


def _cmd_sumnorm(args):
    inputs = _Inputs()
    F = inputs.load("function", args.function, load_grid_function)
    rt = rho_tensor(F.abs())
    split = split_four(F)
    part_norms = split.corner_norms()
    norm_sum = float(sum(part_norms))
    pairing = associate_pairing_sup(F, trials=args.trials, seed=args.seed)
    upper = brute_sum_norm_upper(F, trials=args.trials, seed=args.seed)
    checks = [
        _check_le("rho_tensor_le_norm_sum", rt, norm_sum, args.tolerance),
        _check_le("norm_sum_le_16_rho_tensor", norm_sum, 16.0 * rt, args.tolerance),
        _check_le("pairing_ge_rho_tensor_over_16", rt / 16.0, pairing, args.tolerance),
        _check_le("upper_estimate_le_norm_sum", upper, norm_sum, args.tolerance),
    ]
    for i, (norm, pq) in enumerate(zip(part_norms, ("1_1", "inf_inf", "1_inf", "inf_1")), start=1):
        checks.append(_check_le(f"part{i}_L{pq}_le_4_rho_tensor", norm, 4.0 * rt, args.tolerance))
    quantities = {
        "rho_tensor": rt,
        "intersection_norm": intersection_norm(F),
        "part_norms": list(part_norms),
        "norm_sum": norm_sum,
        "sum_norm_upper": upper,
        "pairing_lower": pairing,
        "sandwich_pass": bool(checks[0]["pass"] and checks[1]["pass"]),
    }
    return _certificate("sumnorm", args, inputs, quantities, checks)


def _cmd_covering(args):
    inputs = _Inputs()
    K = inputs.load("kernel", args.kernel, load_kernel)
    if K.X != K.Y:
        raise ValueError("covering analysis needs a square kernel")
    cov = inputs.load("covering", args.covering, lambda obj: load_covering(obj, K.X))
    u = inputs.load("u", args.u, load_grid_function) if args.u else None
    report = validate_covering(cov, u)
    quantities: dict = {
        "covers": report.covers,
        "patch_positive": list(report.patch_positive),
        "comparability": report.comparability,
        "intersection_number": report.intersection_number,
    }
    if report.moderateness is not None:
        quantities["moderateness"] = report.moderateness
    checks = [_check_flag("covering_admissible", report.admissible)]
    extra: dict = {}
    if report.admissible:
        weights, _, c0 = covering_weights(cov)
        maximal = maximal_kernel(K, cov)

        def load_phase(obj):
            vals = np.asarray(obj["re"], dtype=float)
            if "im" in obj:
                vals = vals + 1j * np.asarray(obj["im"], dtype=float)
            return PhaseGrid(K.X, K.Y, vals)

        phase = inputs.load("phase", args.phase, load_phase) if args.phase else None
        osc = oscillation(K, cov, phase)
        quantities["patch_weights"] = [float(w) for w in weights]
        quantities["condition_constant"] = c0
        quantities["norm_b_maximal"] = norm_B(maximal)
        quantities["norm_b_oscillation"] = norm_B(osc)
        checks.append(
            _check_le(
                "kernel_le_maximal",
                float((np.abs(K.values) - maximal.values).max()),
                0.0,
                args.tolerance,
            )
        )
        extra["maximal_kernel"] = dump_kernel(maximal)
        extra["oscillation_kernel"] = dump_kernel(osc)
    return _certificate("covering", args, inputs, quantities, checks, extra)


def _cmd_coorbit(args):
    inputs = _Inputs()
    frame = inputs.load("frame", args.frame, load_frame)
    space = frame.space
    cov = inputs.load("covering", args.covering, lambda obj: load_covering(obj, space))
    ones = np.ones(space.shape)
    u = inputs.load("u", args.u, load_grid_function) if args.u else GridFunction(space, ones)
    if args.v:
        v = inputs.load("v", args.v, load_grid_function)
    else:
        _, wc, _ = covering_weights(cov)
        v = GridFunction(space, np.maximum(frame.vector_norms(), u.values / wc.values))
    m0 = (
        inputs.load("m0", args.m0, load_weight_grid)
        if args.m0
        else WeightGrid(space, space, np.ones(space.shape + space.shape))
    )
    if args.majorant:
        L = inputs.load("majorant", args.majorant, load_kernel)
    else:
        L = maximal_kernel(reproducing_kernel(frame), cov)
    report = coorbit_report(frame, cov, u, v, m0, L)
    quantities = {
        "norm_a_mv": report.norm_a_mv,
        "norm_b_kpsi": report.norm_b_kpsi,
        "norm_b_majorant": report.norm_b_majorant,
        "covering_admissible": report.covering_admissible,
        "u_moderateness": report.u_moderateness,
        "v_at_least_one": report.v_at_least_one,
        "v_domination_constant": report.v_domination_constant,
        "m0_symmetric": report.m0_symmetric,
        "m0_pair_constant": report.m0_pair_constant,
        "kernel_dominated": report.kernel_dominated,
        "margin": report.margin,
        "margin_pass": report.margin_pass,
        "all_pass": report.all_pass,
    }
    checks = [
        _check_flag("hypotheses_pass", report.all_pass),
        {
            "name": "margin_lt_one",
            "kind": "lt",
            "lhs": report.margin,
            "rhs": 1.0,
            "tolerance": 0.0,
            "pass": report.margin_pass,
        },
    ]
    return _certificate("coorbit", args, inputs, quantities, checks)


def _cmd_counterexample(args):
    inputs = _Inputs()
    _, diag = counterexample_kernel(args.N, args.M, trials=args.trials, seed=args.seed)
    checks = [
        _check_eq("c1_matches_analytic", diag["c1"], diag["c1_analytic"], args.tolerance),
        _check_eq("c3_matches_analytic", diag["c3"], diag["c3_analytic"], args.tolerance),
        _check_le("sampled_lower_le_ell2_upper", diag["corner_1inf_lower"], diag["corner_1inf_upper"], args.tolerance),
    ]
    return _certificate("counterexample", args, inputs, dict(diag), checks)


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schurkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, seeded: bool = False):
        sp.add_argument("--tolerance", type=float, default=1e-9, help="relative tolerance for checks")
        sp.add_argument("--json", action="store_true", help="emit JSON (the only output mode; accepted for explicitness)")
        if seeded:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=64)

    sp = sub.add_parser("norm", help="mixed norm of a function, or plain/structured norms of a kernel")
    sp.add_argument("--kernel")
    sp.add_argument("--function")
    sp.add_argument("--weight", help="weight grid JSON (kernel mode)")
    sp.add_argument("--p", default="2")
    sp.add_argument("--q", default="2")
    common(sp)
    sp.set_defaults(handler=_cmd_norm)

    sp = sub.add_parser("schur", help="Schur constants, norm bound, and sharpness data")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--p", default="2")
    sp.add_argument("--q", default="2")
    common(sp, seeded=True)
    sp.set_defaults(handler=_cmd_schur)

    sp = sub.add_parser("compose", help="mass-weighted composition with submultiplicativity check")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--weight-out", dest="weight_out")
    sp.add_argument("--weight-left", dest="weight_left")
    sp.add_argument("--weight-right", dest="weight_right")
    common(sp)
    sp.set_defaults(handler=_cmd_compose)

    sp = sub.add_parser("sumnorm", help="iterated splitting cost, four-way split, sandwich certificate")
    sp.add_argument("--function", required=True)
    common(sp, seeded=True)
    sp.set_defaults(handler=_cmd_sumnorm)

    sp = sub.add_parser("covering", help="covering validation, weights, maximal and oscillation kernels")
    sp.add_argument("--kernel", required=True)
    sp.add_argument("--covering", required=True)
    sp.add_argument("--u", help="weight function JSON for moderateness")
    sp.add_argument("--phase", help="phase grid JSON for the oscillation kernel")
    common(sp)
    sp.set_defaults(handler=_cmd_covering)

    sp = sub.add_parser("coorbit", help="coorbit hypothesis report for a frame")
    sp.add_argument("--frame", required=True)
    sp.add_argument("--covering", required=True)
    sp.add_argument("--u")
    sp.add_argument("--v")
    sp.add_argument("--m0")
    sp.add_argument("--majorant", help="majorant kernel JSON (default: patch-maximal kernel)")
    common(sp)
    sp.set_defaults(handler=_cmd_coorbit)

    sp = sub.add_parser("counterexample", help="growing-Schur-constant diagnostics")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--M", type=int, default=64)
    common(sp, seeded=True)
    sp.set_defaults(handler=_cmd_counterexample)

    return parser


def run(argv) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports its own diagnostics
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        cert = args.handler(args)
    except (OSError, ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(dumps_json(cert))
    return 0 if all(c["pass"] for c in cert["checks"]) else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
