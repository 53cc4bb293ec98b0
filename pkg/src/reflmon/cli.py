"""Command-line frontend: ``reflmon <verb> [options]``.

Exit codes: 0 ok, 1 verification failed, 2 usage error, 3 cap exceeded."""
from __future__ import annotations

import argparse
import json
import sys

from . import formulas as fm
from . import linalg as la
from .groups import EXCEPTIONAL_GROUP_ORDERS, CapExceeded, enumerate_closure, root_system, weyl_group
from .monoid import ReflMonoid, green_classes

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
CLASSICAL = ("A", "B", "D")
EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8")


class UsageError(Exception):
    pass


def _emit(args, rows: list[dict], columns: list[str]) -> None:
    if args.json:
        print(json.dumps(rows if len(rows) != 1 else rows[0], sort_keys=True, ensure_ascii=False))
        return
    widths = [max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in columns]
    print("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
    for r in rows:
        print("  ".join(str(r.get(c, "")).ljust(w) for c, w in zip(columns, widths)).rstrip())


def _need_n(args) -> int:
    if args.n is None:
        raise UsageError("--n is required for classical types")
    if args.n < 1:
        raise UsageError("--n must be positive")
    return args.n


def _monoid(args) -> ReflMonoid:
    from .systems import arrangement_system, boolean_system
    if args.type in CLASSICAL:
        n = _need_n(args)
        phi = root_system(args.type, n)
    elif args.type in EXCEPTIONAL:
        if args.family == "boolean":
            raise UsageError("the Boolean system is not a system for exceptional groups")
        phi = root_system(args.type)
    else:
        raise UsageError("--type is required")
    w = weyl_group(phi, cap=args.cap)
    if args.family == "boolean":
        return ReflMonoid(w, boolean_system(phi.ambient_dim, w))
    return ReflMonoid(w, arrangement_system(phi, w))


def _seed_monoid(path: str, cap: int) -> ReflMonoid:
    """JSON {"generators": [matrix...], "seeds": [matrix...], "ambient_dim"?: n}."""
    from .systems import generate_system
    with open(path) as fh:
        data = json.load(fh)
    gens = [la.matrix_from_json(g) for g in data.get("generators", [])]
    n = data.get("ambient_dim") or (len(gens[0]) if gens else None)
    if n is None:
        raise UsageError("seed-system file needs generators or ambient_dim")
    w = enumerate_closure(gens, cap=cap, ambient_dim=n)
    seeds = [la.Subspace.span(la.matrix_from_json(m), n) if m else la.Subspace.zero(n) for m in data["seeds"]]
    return ReflMonoid(w, generate_system(w, seeds))


def _set_order(args) -> int:
    from .setmonoids import partial_signed, symmetric_inverse, uniform_block
    n = _need_n(args)
    if args.method == "enumerate":
        build = {"A": symmetric_inverse, "B": partial_signed}.get(args.type)
        if build is None:
            raise UsageError("set family supports --type A (I_n) or B (I_±n)")
        return len(build(n))
    if args.type == "A":
        return fm.order_In(n)
    if args.type == "B":
        return fm.order_boolean("B", n)
    raise UsageError("set family supports --type A (I_n) or B (I_±n)")


def cmd_order(args) -> int:
    method = args.method or "formula"
    if args.seed_system:
        m = _seed_monoid(args.seed_system, args.cap)
        value = len(m.enumerate_brute()) if method == "enumerate" else m.order_by_isotropy()
        _emit(args, [{"system": "seeded", "method": method, "order": value}], ["system", "method", "order"])
        return EXIT_OK
    if args.family is None or args.type is None:
        raise UsageError("order needs --family and --type (or --seed-system)")
    if args.family == "set":
        value = _set_order(args)
    elif method == "formula":
        if args.type in EXCEPTIONAL:
            if args.family != "arrangement":
                raise UsageError("exceptional types only have arrangement monoids here")
            value = fm.exceptional_orders(recompute=False)[args.type][0]
        else:
            n = _need_n(args)
            if args.family == "boolean":
                value = fm.order_boolean(args.type, n)
            else:
                value = {"A": fm.order_arrangement_A, "B": fm.order_arrangement_B,
                         "D": fm.order_arrangement_D}[args.type](n)
    elif method == "orbit-data":
        if args.orbit_data:
            with open(args.orbit_data) as fh:
                data = fm.orbit_data_from_json(fh.read())
        elif args.type == "F4":
            data = fm.F4_ORBIT_DATA
        elif args.type == "G2":
            data = fm.G2_ORBIT_DATA
        else:
            raise UsageError("--orbit-data FILE is required for this type")
        if args.type in EXCEPTIONAL_GROUP_ORDERS:
            group_order = EXCEPTIONAL_GROUP_ORDERS[args.type]
        else:
            group_order = len(weyl_group(root_system(args.type, _need_n(args)), cap=args.cap))
        value = fm.order_from_orbit_data(group_order, data)
        if args.type in fm.EXCEPTIONAL_FACTORS:
            stored = fm.exceptional_orders(recompute=False)[args.type][0]
            if value != stored:
                _emit(args, [{"type": args.type, "order": value, "stored": stored, "status": "MISMATCH"}],
                      ["type", "order", "stored", "status"])
                return EXIT_FAIL
    elif method == "isotropy":
        value = _monoid(args).order_by_isotropy()
    elif method == "enumerate":
        m = _monoid(args)
        if m.order_by_isotropy() > args.cap:
            raise CapExceeded(f"enumeration beyond --cap {args.cap}")
        value = len(m.enumerate_brute())
    else:
        raise UsageError(f"unknown method {method}")
    row = {"family": args.family, "type": args.type, "n": args.n if args.type in CLASSICAL else "",
           "method": method, "order": value}
    _emit(args, [row], ["family", "type", "n", "method", "order"])
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.seed_system:
        m = _seed_monoid(args.seed_system, args.cap)
    else:
        if args.family not in ("boolean", "arrangement") or args.type is None:
            raise UsageError("enumerate needs --family boolean|arrangement and --type")
        m = _monoid(args)
    if m.order_by_isotropy() > args.cap:
        raise CapExceeded(f"{m.order_by_isotropy()} elements exceeds --cap {args.cap}")
    elems = m.enumerate()
    if args.json:
        print(json.dumps([e.to_json() for e in elems], sort_keys=True))
    else:
        for e in elems:
            dom = ";".join(",".join(la.fmt(x) for x in r) for r in e.domain.basis) or "0"
            img = ";".join(",".join(la.fmt(x) for x in r) for r in e.images) or "0"
            print(f"{dom} -> {img}")
    return EXIT_OK


ISO_CHECKS = {
    "An-boolean:In": "rook_iso",
    "Bn-boolean:I±n": "signed_iso",
    "Bn-boolean:Ipmn": "signed_iso",
    "Sn-arrangement:Pn": "block_iso",
}


def cmd_verify(args) -> int:
    from . import examples
    n = _need_n(args)
    if n > 4:
        raise UsageError("isomorphisms are verified for n <= 4")
    names = list(dict.fromkeys(ISO_CHECKS[k] for k in ISO_CHECKS)) if args.iso == "all" else None
    if names is None:
        if args.iso not in ISO_CHECKS:
            raise UsageError(f"unknown --iso {args.iso}; choose from {', '.join(ISO_CHECKS)} or all")
        names = [ISO_CHECKS[args.iso]]
    rows = []
    ok = True
    for name in names:
        rep = getattr(examples, name)(n)
        ok &= bool(rep)
        rows.append({"check": name, "n": n, "result": "PASS" if rep else "FAIL", "reasons": "; ".join(rep.reasons)})
    _emit(args, rows, ["check", "n", "result", "reasons"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_green(args) -> int:
    if args.family not in ("boolean", "arrangement") or args.type is None:
        raise UsageError("green needs --family boolean|arrangement and --type")
    m = _monoid(args)
    table = m.to_table(cap=args.cap)
    rows, ok = [], True
    for rel in "RLHDJ":
        char = sorted(sorted(c) for c in green_classes(m, rel))
        brute = sorted(sorted(c) for c in table.green_classes(rel))
        ok &= char == brute
        rows.append({"relation": rel, "classes": len(char), "brute_force": len(brute),
                     "agree": "yes" if char == brute else "no"})
    _emit(args, rows, ["relation", "classes", "brute_force", "agree"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cone(args) -> int:
    from .cones import Cone, face_lattice, is_simplicial, minimal_face, theta
    if not args.cone:
        raise UsageError("cone needs --cone FILE")
    with open(args.cone) as fh:
        data = json.load(fh)
    c = Cone.from_json(data)
    gens = [la.matrix_from_json(g) for g in data.get("group_generators", [])] if isinstance(data, dict) else []
    w = enumerate_closure(gens, cap=args.cap, ambient_dim=c.ambient_dim)
    fl = face_lattice(c)
    rep = theta(w, c)
    row = {
        "faces": len(fl), "minimal_face_dim": minimal_face(c).dim, "simplicial": is_simplicial(c),
        "group_order": len(w), "M(W,S_M)": rep.source_order, "M(W,F)": rep.target_order,
        "theta_hom": rep.homomorphism, "theta_onto": rep.surjective, "theta_iso": rep.injective,
    }
    if args.json:
        row["face_lattice"] = fl.to_json()["faces"]
    _emit(args, [row], list(k for k in row if k != "face_lattice"))
    return EXIT_OK if rep.consistent else EXIT_FAIL


def cmd_exceptional(args) -> int:
    orders = fm.exceptional_orders()
    rows = [{"type": k, "order": v, "factored": f} for k, (v, f) in orders.items()]
    _emit(args, rows, ["type", "order", "factored"])
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all
    stretch = tuple(args.stretch or ())
    results = run_all(quick=args.quick, stretch=stretch)
    rows = [{"criterion": name, "result": "PASS" if ok else "FAIL", "seconds": f"{dt:.1f}", "detail": detail}
            for name, ok, detail, dt in results]
    _emit(args, rows, ["criterion", "result", "seconds", "detail"])
    return EXIT_OK if all(ok for _, ok, _, _ in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=["boolean", "arrangement", "set"])
    common.add_argument("--type", choices=list(CLASSICAL + EXCEPTIONAL))
    common.add_argument("--n", type=int)
    common.add_argument("--method", choices=["formula", "isotropy", "enumerate", "orbit-data"])
    common.add_argument("--orbit-data")
    common.add_argument("--json", action="store_true")
    common.add_argument("--cap", type=int, default=10**6)
    common.add_argument("--seed-system")
    common.add_argument("--cone")
    ap = argparse.ArgumentParser(prog="reflmon", description="Reflection monoids of partial linear isomorphisms.")
    sub = ap.add_subparsers(dest="verb", required=True)
    sub.add_parser("order", parents=[common], help="order of a monoid")
    sub.add_parser("enumerate", parents=[common], help="list the elements")
    v = sub.add_parser("verify", parents=[common], help="check a named isomorphism")
    v.add_argument("--iso", required=True)
    sub.add_parser("green", parents=[common], help="Green's classes vs brute force")
    sub.add_parser("cone", parents=[common], help="face lattice and θ for a cone")
    sub.add_parser("exceptional", parents=[common], help="stored exceptional orders")
    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--quick", action="store_true")
    s.add_argument("--stretch", action="append", choices=["e6"])
    return ap


COMMANDS = {
    "order": cmd_order, "enumerate": cmd_enumerate, "verify": cmd_verify, "green": cmd_green,
    "cone": cmd_cone, "exceptional": cmd_exceptional, "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
