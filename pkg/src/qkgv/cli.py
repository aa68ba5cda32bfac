"""Command-line interface.

Exit codes: 0 pass, 1 input error, 2 integrality warning, 3 pole violation,
4 verification failure, 5 non-integer QK invariant from integer inputs.
"""

import argparse
import os
import random
import sys

from .exact import lcm_upto
from .geometry import CY3Data, GVTable, gv_from_gw, gw_from_gv
from .io import (InputError, geometry_from_dict, geometry_to_dict, jfunction_from_dict,
                 jfunction_to_dict, qk_table_to_dict, read_json, table_from_dict, table_to_dict,
                 write_json)
from .report import Report
from .series import component_from_indices, component_name, enumerate_classes, parse_component

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTEGRALITY_WARNING = 2
EXIT_POLE_VIOLATION = 3
EXIT_VERIFICATION_FAILED = 4
EXIT_THEOREM_VIOLATION = 5

DEFAULT_CONDUCTOR_CAP = 27720
CONDUCTOR_CAP_ENV = "QKGV_CONDUCTOR_CAP"



def _warn(message):
    print(f"qkgv: warning: {message}", file=sys.stderr)


def conductor_cap():
    raw = os.environ.get(CONDUCTOR_CAP_ENV)
    if raw is None:
        return DEFAULT_CONDUCTOR_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputError(f"{CONDUCTOR_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InputError(f"{CONDUCTOR_CAP_ENV} must be positive")
    return cap


def _check_cutoffs(args, *names):
    for name in names:
        value = getattr(args, name, None)
        if value is not None and value < 0:
            raise InputError(f"--{name.replace('_', '-')} must be non-negative")
    d = getattr(args, "d_max", None)
    if d is not None:
        cap = conductor_cap()
        if cap < d:
            raise InputError(f"conductor cap {cap} is below the class-degree cutoff {d}")
        if lcm_upto(d) > cap:
            raise InputError(f"conductor lcm(1..{d}) = {lcm_upto(d)} exceeds the cap {cap}; "
                             f"raise {CONDUCTOR_CAP_ENV} to proceed")


def default_geometry(rank):
    """Diagonal pairing, kappa_{iii} = 5 and kappa_{ij j} = 1 for i < j."""
    kappa = {(i, i, i): 5 for i in range(rank)}
    for i in range(rank):
        for j in range(i + 1, rank):
            kappa[(i, j, j)] = 1
    return CY3Data(rank, rank, [[int(i == j) for j in range(rank)] for i in range(rank)], kappa)


def random_gv(rank, cutoff, seed, bound=1000):
    rng = random.Random(seed)
    return GVTable(rank, {b: rng.randint(-bound, bound) for b in enumerate_classes(rank, cutoff)})


def _load_inputs(args, need_gv=True):
    if args.geometry:
        geom = geometry_from_dict(read_json(args.geometry))
    else:
        geom = default_geometry(args.rank)
    if not need_gv:
        return geom, None
    if args.gv:
        gv = table_from_dict(read_json(args.gv), "GV", geom.h2rank)
        if gv.rank != geom.h2rank:
            raise InputError(f"GV table rank {gv.rank} does not match geometry rank {geom.h2rank}")
    else:
        gv = random_gv(geom.h2rank, args.d_max, args.seed)
    return geom, gv


def _echo_inputs(rep, args, geom, gv):
    rep.echo["geometry"] = args.geometry or "default"
    rep.echo["gv"] = args.gv or f"random(seed={args.seed})"
    rep.data.setdefault("inputs", {"geometry": geometry_to_dict(geom),
                                   "gv": table_to_dict(gv) if gv is not None else None})


def _emit(args, payload):
    write_json(getattr(args, "out", None), payload)


# ----- commands ---------------------------------------------------------------

def cmd_convert(args):
    _check_cutoffs(args, "d_max")
    kind = "GV" if args.direction == "gv2gw" else "GW"
    table = table_from_dict(read_json(args.input), kind, args.rank)
    if args.direction == "gv2gw":
        out = gw_from_gv(table, args.d_max)
    else:
        out = gv_from_gw(table, args.d_max)
    write_json(args.output, table_to_dict(out))
    for w in out.warnings:
        _warn(w)
    return EXIT_INTEGRALITY_WARNING if out.warnings else EXIT_OK


def cmd_jfun(args):
    from .jfunction import build_jtilde, pole_report
    _check_cutoffs(args, "d_max", "t_degree", "q_order")
    geom, gv = _load_inputs(args)
    J = build_jtilde(geom, gv, args.d_max, args.t_degree, args.q_order)
    rep = pole_report(J)
    payload = jfunction_to_dict(J)
    payload["pole_report"] = {"summary": rep.summary(), "status": "pass" if rep.passed else "fail",
                              **rep.data}
    _emit(args, payload)
    return EXIT_OK if rep.passed else EXIT_POLE_VIOLATION


def _suite_lemmas(args):
    from .jfunction import verify_expansion_lemmas
    geom, gv = _load_inputs(args)
    rep = verify_expansion_lemmas(geom, gv, args.d_max, args.t_degree)
    _echo_inputs(rep, args, geom, gv)
    return rep


def _suite_fake(args):
    from .jfunction import verify_adelic_structure, verify_fake_identity
    geom, gv = _load_inputs(args)
    rep = verify_fake_identity(geom, gv, args.d_max, args.t_degree, args.order)
    rep.extend(verify_adelic_structure(geom, gv, args.d_max, min(args.t_degree, 2),
                                       min(args.order, 3)))
    _echo_inputs(rep, args, geom, gv)
    return rep


def _suite_poles(args):
    from .jfunction import build_jtilde, pole_report
    if args.jfile:
        J, problems = jfunction_from_dict(read_json(args.jfile))
        rep = pole_report(J, args.max_root_order)
        for beta, comp, mono, msg in problems:
            rep.add("pole-bound", [list(beta), str(comp), list(mono)], False, {"error": msg})
        rep.echo["jfile"] = args.jfile
        return rep
    geom, gv = _load_inputs(args)
    J = build_jtilde(geom, gv, args.d_max, args.t_degree)
    rep = pole_report(J, args.max_root_order)
    _echo_inputs(rep, args, geom, gv)
    return rep


def _suite_conifold(args):
    from .conifold import (conifold_gv_check, verify_ring_presentation, verify_small_j_t,
                           verify_small_j_t0)
    rep = Report("verify conifold", {"r_max": args.r_max, "r_max_t": args.r_max_t,
                                     "t_degree": args.t_degree, "gw_d_max": args.gw_d_max})
    rep.extend(verify_ring_presentation())
    rep.extend(verify_small_j_t0(args.r_max))
    t_rep = verify_small_j_t(args.r_max_t, args.t_degree)
    rep.extend(t_rep)
    rep.extend(conifold_gv_check(args.gw_d_max))
    rep.data = {"small_j_t": t_rep.data}
    return rep


def _suite_roundtrip(args):
    from .jfunction import build_jtilde, extract_qk_table, gv_from_qk
    from .jfunction.qk import PivotError, QKConsistencyError
    geom, gv = _load_inputs(args)
    rep = Report("verify roundtrip", {"d_max": args.d_max, "t_degree": args.t_degree,
                                      "k_max": args.k_max})
    _echo_inputs(rep, args, geom, gv)
    base = gv.restricted(args.d_max)
    back = gv_from_gw(gw_from_gv(base, args.d_max), args.d_max)
    rep.add("gw-roundtrip", [], back == base, {})
    J = build_jtilde(geom, base, args.d_max, args.t_degree, args.k_max)
    qk = extract_qk_table(J, k_max=args.k_max)
    bad = qk.non_integral()
    rep.add("qk-integrality", [], not bad or not base.is_integral(), {"non_integral": len(bad)})
    try:
        rec = gv_from_qk(qk, geom, args.d_max)
        rep.add("qk-roundtrip", [], rec == base, {})
    except (PivotError, QKConsistencyError) as exc:
        rep.add("qk-roundtrip", [], False, {"error": str(exc)})
    return rep


SUITES = {"lemmas": _suite_lemmas, "fake": _suite_fake, "poles": _suite_poles,
          "conifold": _suite_conifold, "roundtrip": _suite_roundtrip}


def cmd_verify(args):
    _check_cutoffs(args, "d_max", "t_degree")
    rep = SUITES[args.suite](args)
    _emit(args, rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_VERIFICATION_FAILED


def _parse_alpha(text):
    text = text.strip()
    if text.startswith("Phi"):
        return parse_component(text)
    parts = text.strip("()").split(",")
    if len(parts) != 2:
        raise InputError(f"alpha must be 'i,j' or a component name, got {text!r}")
    try:
        return component_from_indices("up", int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_qk_table(args):
    from .jfunction import build_jtilde, extract_qk_table
    _check_cutoffs(args, "d_max", "t_degree", "k_max")
    geom, gv = _load_inputs(args)
    alphas = [_parse_alpha(a) for a in args.alpha] if args.alpha else None
    J = build_jtilde(geom, gv, args.d_max, args.t_degree, args.k_max)
    classes = [b for b in enumerate_classes(geom.h2rank, args.d_max)
               if not args.beta or list(b) in args.beta]
    if not gv.entries:
        classes = []        # no instanton part, so no invariants with beta != 0
    table = extract_qk_table(J, alphas, args.k_max, args.t_degree, classes)
    bad = table.non_integral()
    payload = qk_table_to_dict(table)
    payload["non_integral"] = [{"alpha": component_name(a), "k": k, "beta": list(b), "t": list(m)}
                               for a, k, b, m in sorted(bad)]
    _emit(args, payload)
    for a, k, b, m in sorted(bad)[:10]:
        _warn(f"non-integer invariant {component_name(a)} k={k} beta={list(b)} t={list(m)}")
    if bad and gv.is_integral():
        return EXIT_THEOREM_VIOLATION
    if bad:
        return EXIT_INTEGRALITY_WARNING
    return EXIT_OK


# ----- argument parsing -----------------------------------------------------------

def _beta(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"class must be comma-separated integers: {text!r}") from exc


def _add_inputs(p, d_max, t_degree):
    p.add_argument("--geometry", help="geometry JSON (default: rank-RANK sample geometry)")
    p.add_argument("--gv", help="GV table JSON (default: random integer table, |GV| <= 1000)")
    p.add_argument("--rank", type=int, default=1, help="rank of the default geometry")
    p.add_argument("--seed", type=int, default=0, help="seed for the default random GV table")
    p.add_argument("--d-max", type=int, default=d_max, help="class-degree cutoff D")
    p.add_argument("--t-degree", type=int, default=t_degree, help="t-degree cutoff")


def build_parser():
    parser = argparse.ArgumentParser(prog="qkgv", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="GV <-> GW by multiple-cover / Moebius inversion")
    p.add_argument("direction", choices=["gv2gw", "gw2gv"])
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--d-max", type=int, default=5)
    p.add_argument("--rank", type=int, default=None, help="rank for an empty input table")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("jfun", help="build and serialize the J-function")
    _add_inputs(p, 3, 3)
    p.add_argument("--q-order", type=int, default=10)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_jfun)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _add_inputs(p, None, None)
    p.add_argument("--order", type=int, default=5, help="(1-q)-expansion order for 'fake'")
    p.add_argument("--jfile", help="J-function JSON to check ('poles' only)")
    p.add_argument("--max-root-order", type=int, default=None)
    p.add_argument("--k-max", type=int, default=10, help="q-power cutoff for 'roundtrip'")
    p.add_argument("--r-max", type=int, default=4, help="Q-degree for the t = 0 conifold check")
    p.add_argument("--r-max-t", type=int, default=3, help="Q-degree for the t != 0 conifold check")
    p.add_argument("--gw-d-max", type=int, default=12)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qk-table", help="extract quantum K-invariants")
    _add_inputs(p, 3, 0)
    p.add_argument("--alpha", action="append", help="component, e.g. '0,1' or 'Phi^{11}'")
    p.add_argument("--beta", action="append", type=_beta, help="restrict to a class, e.g. '1' or '1,0'")
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_qk_table)
    return parser


# (d_max, t_degree) defaults per suite
_SUITE_DEFAULTS = {"lemmas": (4, 2), "fake": (4, 3), "poles": (4, 3), "conifold": (4, 2),
                   "roundtrip": (5, 3)}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "verify":
        d_max, t_degree = _SUITE_DEFAULTS[args.suite]
        args.d_max = d_max if args.d_max is None else args.d_max
        args.t_degree = t_degree if args.t_degree is None else args.t_degree
    try:
        return args.func(args)
    except InputError as exc:
        print(f"qkgv: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
