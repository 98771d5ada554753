"""colexa command line: machine-readable JSON front-end over the library.

Exit codes: 0 = all requested checks pass, 1 = a verification failed (witness
in the JSON), 2 = usage or input errors.  All randomness is seeded; the
enumeration cap comes from --cap or the COLEXA_CAP environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import code as code_mod
from . import colex, gatecalc, gauge, morth, ring

PASS, FAIL, USAGE = 0, 1, 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return USAGE
    try:
        status, payload = args.handler(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError, code_mod.CapExceeded) as exc:
        print(f"colexa: {exc}", file=sys.stderr)
        return USAGE
    emit(payload, args.pretty)
    return status


def emit(payload, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))


def default_cap() -> int:
    return int(os.environ.get("COLEXA_CAP", code_mod.DEFAULT_CAP))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colexa")
    sub = parser.add_subparsers(dest="group")

    def common(p):
        p.add_argument("--pretty", action="store_true")
        p.add_argument("--cap", type=int, default=default_cap())

    def lattice_flags(p):
        p.add_argument("--lattice", default="tetra",
                       help="tetra | triangle | path to lattice JSON")
        p.add_argument("--distance", type=int, default=3)

    def code_flags(p):
        p.add_argument("--code", default="tetra",
                       help="tetra | triangle | path to code JSON")
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--distance", type=int, default=3)
        p.add_argument("--mu-prime", type=int, default=None, dest="mu_prime")

    lat = sub.add_parser("lattice")
    latsub = lat.add_subparsers(dest="action")
    p = latsub.add_parser("build")
    lattice_flags(p); common(p)
    p.set_defaults(handler=cmd_lattice_build)
    p = latsub.add_parser("check")
    lattice_flags(p); common(p)
    p.set_defaults(handler=cmd_lattice_check)

    cod = sub.add_parser("code")
    codsub = cod.add_subparsers(dest="action")
    p = codsub.add_parser("build")
    code_flags(p); common(p)
    p.set_defaults(handler=cmd_code_build)
    p = codsub.add_parser("check")
    code_flags(p); common(p)
    p.set_defaults(handler=cmd_code_check)
    p = codsub.add_parser("distance")
    code_flags(p); common(p)
    p.add_argument("--sector", choices=["x", "z", "both"], default="both")
    p.set_defaults(handler=cmd_code_distance)
    p = codsub.add_parser("syndrome")
    code_flags(p); common(p)
    p.add_argument("--error", required=True,
                   help="comma-separated Pauli terms, e.g. Z@1111 or X^2@7")
    p.set_defaults(handler=cmd_code_syndrome)
    p = codsub.add_parser("codeword")
    code_flags(p); common(p)
    p.add_argument("--x", type=int, default=0)
    p.set_defaults(handler=cmd_code_codeword)

    mor = sub.add_parser("morth")
    morsub = mor.add_subparsers(dest="action")
    p = morsub.add_parser("check")
    code_flags(p); common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=["strong", "weak"], default="strong")
    p.set_defaults(handler=cmd_morth_check)

    gat = sub.add_parser("gate")
    gatsub = gat.add_subparsers(dest="action")
    p = gatsub.add_parser("level")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--gate", required=True)
    p.add_argument("--l-cap", type=int, default=10, dest="l_cap")
    common(p)
    p.set_defaults(handler=cmd_gate_level)
    p = gatsub.add_parser("verify")
    code_flags(p); common(p)
    p.add_argument("--gate", required=True,
                   help="T | T36 | S | R:a0,a1,... | CX")
    p.set_defaults(handler=cmd_gate_verify)

    gau = sub.add_parser("gauge")
    gausub = gau.add_subparsers(dest="action")
    p = gausub.add_parser("check")
    code_flags(p); common(p)
    p.set_defaults(handler=cmd_gauge_check)
    p = gausub.add_parser("fix-demo")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(handler=cmd_gauge_fix_demo)

    return parser


# -- input resolution ------------------------------------------------------


def load_lattice(args) -> colex.Lattice:
    name = args.lattice
    if name == "tetra":
        L, _ = colex.build_tetrahedral(getattr(args, "d", 2))
        return L
    if name == "triangle":
        L, _ = colex.build_triangle_2d(getattr(args, "d", 2), args.distance)
        return L
    with open(name) as fh:
        return colex.lattice_from_json(json.load(fh))


def load_code(args):
    """(lattice or None, ColorCode) from --code."""
    if args.code == "tetra":
        L, C = colex.build_tetrahedral(args.d)
        if args.mu_prime is not None and args.mu_prime != 3:
            C = code_mod.from_colex(L, args.mu_prime, args.d)
        return L, C
    if args.code == "triangle":
        L, C = colex.build_triangle_2d(args.d, args.distance)
        return L, C
    with open(args.code) as fh:
        return None, code_mod.code_from_json(json.load(fh))


def parse_error(spec: str, C, L) -> code_mod.PauliWord:
    """Parse 'Z@1111,X^2@7' style error specs into one PauliWord."""
    x = [0] * C.n
    z = [0] * C.n
    for term in spec.split(","):
        term = term.strip()
        if "@" not in term:
            raise ValueError(f"bad error term {term!r}, expected PAULI[@^pow]@vertex")
        op, vert = term.split("@", 1)
        power = 1
        if "^" in op:
            op, pw = op.split("^", 1)
            power = int(pw)
        site = resolve_site(vert, C, L)
        if op.upper() == "X":
            x[site] += power
        elif op.upper() == "Z":
            z[site] += power
        else:
            raise ValueError(f"unknown Pauli {op!r}")
    return code_mod.PauliWord(C.d, tuple(x), tuple(z))


def resolve_site(vert: str, C, L) -> int:
    """Vertex label to qudit index; binary strings name builder vertices."""
    label = None
    try:
        label = int(vert)
    except ValueError:
        pass
    ids = list(L.vertex_ids) if L is not None else list(range(C.n))
    if label is not None and label in ids:
        return ids.index(label)
    if set(vert) <= {"0", "1"} and len(vert) > 1:
        b = int(vert, 2)
        if b in ids:
            return ids.index(b)
    raise ValueError(f"unknown vertex label {vert!r}")


# -- handlers --------------------------------------------------------------


def cmd_lattice_build(args):
    L = load_lattice(args)
    return PASS, colex.lattice_to_json(L)


def cmd_lattice_check(args):
    L = load_lattice(args)
    rep = colex.validate_colex(L)
    payload = {"validate": rep.to_dict()}
    if rep.ok:
        if any(L.star.get(v) is None for v in L.vertex_ids):
            L = colex.star_bipartition(L)
        bal = colex.check_cell_balance(L)
        payload["balance"] = bal.to_dict()
        payload["starred"] = len(L.starred())
        payload["unstarred"] = len(L.unstarred())
        ok = rep.ok and bal.ok
    else:
        ok = False
    payload["ok"] = ok
    return (PASS if ok else FAIL), payload


def cmd_code_build(args):
    _, C = load_code(args)
    return PASS, code_mod.code_to_json(C)


def cmd_code_check(args):
    _, C = load_code(args)
    rep = code_mod.verify_code(C)
    return (PASS if rep.ok else FAIL), rep.to_dict()


def cmd_code_distance(args):
    _, C = load_code(args)
    out = {}
    sectors = ["x", "z"] if args.sector == "both" else [args.sector]
    for s in sectors:
        out[s] = code_mod.distance(C, s, cap=args.cap)
    return PASS, out


def cmd_code_syndrome(args):
    L, C = load_code(args)
    E = parse_error(args.error, C, L)
    syn = code_mod.syndrome(C, E)
    return PASS, {
        "syndrome": list(syn),
        "x_generators": C.G0.nrows,
        "z_generators": C.z_stab.nrows,
        "nonzero": [i for i, v in enumerate(syn) if v],
    }


def cmd_code_codeword(args):
    _, C = load_code(args)
    cw = code_mod.codeword(C, args.x, cap=args.cap)
    return PASS, {
        "x": list(cw.x),
        "terms": sorted(list(t) for t in cw.terms),
        "count": len(cw.terms),
    }


def cmd_morth_check(args):
    _, C = load_code(args)
    M, g1 = morth.code_matrix(C)
    rep = morth.is_m_star_orthogonal(M, g1, args.m, args.mode)
    return (PASS if rep.holds else FAIL), rep.to_dict()


def cmd_gate_level(args):
    g = gatecalc.build_gate(args.gate, args.d)
    verdict = gatecalc.hierarchy_level(g, args.l_cap)
    return PASS, {"gate": args.gate, "d": args.d, "N": g.N} | verdict.to_dict()


def cmd_gate_verify(args):
    _, C = load_code(args)
    if args.gate == "CX":
        rep = gatecalc.verify_transversal_CX(C, cap=args.cap)
    else:
        g = gatecalc.build_gate(args.gate, args.d)
        rep = gatecalc.verify_transversal_phase(C, g, cap=args.cap)
    return (PASS if rep.passed else FAIL), rep.to_dict()


def cmd_gauge_check(args):
    L, C = load_code(args)
    if L is None:
        raise ValueError("gauge check needs a builder lattice (tetra)")
    G = gauge.build_gauge_code(L, args.d)
    ok, center_rep = gauge.center_equals_stabilizer(G)
    h_rep = gauge.verify_H_logical(G)
    neg = gauge.verify_H_stabilizer_code(C)
    payload = {
        "gauge_generators": len(G.gauge_gens()),
        "stabilizer_generators": len(G.stab_gens()),
        "center_equals_stabilizer": center_rep.to_dict(),
        "transversal_H": h_rep.to_dict(),
        "negative_control_global_H_fails": not neg.ok,
    }
    passed = ok and h_rep.ok and not neg.ok
    payload["ok"] = passed
    return (PASS if passed else FAIL), payload


def cmd_gauge_fix_demo(args):
    log = gauge.fix_demo(args.d, args.seed)
    ok = all(log["post"].values())
    log["ok"] = ok
    return (PASS if ok else FAIL), log


if __name__ == "__main__":
    sys.exit(main())
