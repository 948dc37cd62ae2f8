"""Command-line front end: build, verify, compare, report, plus the rep,
tube, and double subfamilies.  Exit codes: 0 pass, 1 verified failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import jsonio
from .builders import (
    build_a_g_omega,
    build_a_m_c,
    build_b_g_omega,
    build_frobenius_double,
    build_groupoid_algebra,
    group_as_groupoid,
    indiscrete_groupoid,
    standard_frobenius,
)
from .groups import catalog_group, standard_cocycle, trivial_cocycle, validate_cocycle
from .skeleton import fib_fusion_ring, pointed_skeleton
from .wha import (
    base_algebras,
    center_dim,
    compare_structure,
    default_threads,
    is_cocommutative,
    verify_antipode,
    verify_quasitriangular,
    verify_weak_bialgebra,
)


class UsageError(Exception):
    pass


def _load_group(spec):
    if spec is None:
        raise UsageError("missing --group")
    if os.path.exists(spec):
        return jsonio.group_from_json(jsonio.read_json(spec))
    try:
        return catalog_group(spec)
    except KeyError as exc:
        raise UsageError(str(exc))


def _load_cocycle(spec, G):
    if spec in (None, "trivial"):
        return trivial_cocycle(G)
    if os.path.exists(spec):
        omega = jsonio.cocycle_from_json(jsonio.read_json(spec), G)
        rep = validate_cocycle(G, omega)
        if not rep.ok:
            raise UsageError(f"invalid cocycle file: {rep.first_failure}")
        return omega
    if spec.startswith("p="):
        try:
            p = int(spec[2:])
        except ValueError:
            raise UsageError(f"bad cocycle spec {spec!r}")
        w = standard_cocycle(G.order, p)
        if w.group.table != G.table:
            raise UsageError("standard cocycles are defined on cyclic groups only")
        return w
    raise UsageError(f"bad cocycle spec {spec!r} (use p=<int>, trivial, or a file)")


def _print_report(rep, as_json):
    if as_json:
        sys.stdout.write(jsonio.dumps(rep.to_json()))
    else:
        print(rep.render())


def cmd_build(args):
    kind = args.kind
    if kind in ("b-g-omega", "a-g-omega"):
        G = _load_group(args.group)
        omega = _load_cocycle(args.cocycle, G)
        if kind == "b-g-omega":
            A = build_b_g_omega(G, omega)
            R = None
        else:
            A, R = build_a_g_omega(G, omega)
    elif kind == "a-m-c":
        if not args.skeleton or not args.module:
            raise UsageError("a-m-c needs --skeleton and --module files")
        C = jsonio.skeleton_from_json(jsonio.read_json(args.skeleton))
        M = jsonio.module_from_json(jsonio.read_json(args.module), C)
        A = build_a_m_c(C, M)
        R = None
    elif kind == "groupoid":
        if args.indiscrete is not None:
            gpd = indiscrete_groupoid(args.indiscrete)
        elif args.group is not None:
            gpd = group_as_groupoid(_load_group(args.group))
        else:
            raise UsageError("groupoid needs --indiscrete N or --group")
        A = build_groupoid_algebra(gpd)
        R = None
    elif kind == "frobenius-double":
        if args.diagonal is not None:
            B = standard_frobenius("diagonal", args.diagonal)
        elif args.matrix is not None:
            B = standard_frobenius("matrix", args.matrix)
        else:
            raise UsageError("frobenius-double needs --diagonal N or --matrix N")
        A = build_frobenius_double(B)
        R = None
    else:
        raise UsageError(f"unknown build kind {kind!r}")
    if args.out:
        jsonio.write_json(args.out, jsonio.algebra_to_json(A))
    if R is not None and args.rmatrix_out:
        jsonio.write_json(args.rmatrix_out, jsonio.rmatrix_to_json(A, R))
    print(f"dim {A.dim} conductor {A.conductor}")
    return 0


def cmd_verify(args):
    A = jsonio.algebra_from_json(jsonio.read_json(args.file))
    threads = args.threads
    suites = []
    if args.suite in ("wha", "all"):
        suites.append(verify_weak_bialgebra(A, threads=threads))
        suites.append(verify_antipode(A, threads=threads))
    if args.suite in ("base", "all"):
        suites.append(base_algebras(A).report)
    if args.suite in ("qt",):
        if not args.rmatrix:
            raise UsageError("suite qt needs --rmatrix FILE")
        R = jsonio.rmatrix_from_json(jsonio.read_json(args.rmatrix))
        suites.append(verify_quasitriangular(A, R))
    elif args.suite == "all" and args.rmatrix:
        R = jsonio.rmatrix_from_json(jsonio.read_json(args.rmatrix))
        suites.append(verify_quasitriangular(A, R))
    ok = True
    for rep in suites:
        _print_report(rep, args.json)
        ok = ok and rep.ok
    return 0 if ok else 1


def cmd_compare(args):
    A = jsonio.algebra_from_json(jsonio.read_json(args.a))
    B = jsonio.algebra_from_json(jsonio.read_json(args.b))
    if A.dim != B.dim:
        raise UsageError(f"dimension mismatch: {A.dim} vs {B.dim}")
    if args.map:
        raw = jsonio.read_json(args.map)
        index_map = list(raw) if isinstance(raw, list) else None
        if index_map is None or sorted(index_map) != list(range(A.dim)):
            raise UsageError("--map must be a bijective index list")
    else:
        try:
            index_map = [B.label_index[lab] for lab in A.labels]
        except KeyError:
            raise UsageError("labels do not match; provide --map")
    rep = compare_structure(A, B, index_map)
    _print_report(rep, args.json)
    return 0 if rep.ok else 1


def cmd_report(args):
    A = jsonio.algebra_from_json(jsonio.read_json(args.file))
    ba = base_algebras(A)
    print(f"dim {A.dim}")
    print(f"conductor {A.conductor}")
    print(f"dim A^l {ba.dim_l}")
    print(f"dim A^r {ba.dim_r}")
    print(f"center_dim {center_dim(A)}")
    print(f"cocommutative {str(is_cocommutative(A)).lower()}")
    return 0


def _load_module(spec, A, seed=0):
    from .repcat import k_module, regular_module, tensor_unit

    if spec == "regular":
        return regular_module(A)
    if spec == "unit":
        return tensor_unit(A)
    if spec.startswith("k:"):
        meta = A.meta
        if meta.get("builder") != "b-g-omega":
            raise UsageError("k:<g> modules exist for b-g-omega algebras only")
        G = catalog_group(meta["group"])
        name = meta.get("cocycle", "trivial")
        if name.startswith("standard(p="):
            omega = standard_cocycle(G.order, int(name[len("standard(p="):-1]))
        else:
            omega = trivial_cocycle(G)
        return k_module(A, G, omega, int(spec[2:]))
    if os.path.exists(spec):
        return jsonio.wha_module_from_json(jsonio.read_json(spec), A)
    raise UsageError(f"bad module spec {spec!r} (regular, unit, k:<g>, or a file)")


def cmd_rep(args):
    from .repcat import (
        braid_relation_check,
        braiding_check,
        coherence_check,
        modules_isomorphic,
        tensor_product,
        validate_module,
    )

    A = jsonio.algebra_from_json(jsonio.read_json(args.algebra))
    V = _load_module(args.left, A)
    W = _load_module(args.right, A)
    if args.action == "tensor":
        prod = tensor_product(V, W)
        rep = validate_module(A, prod.module)
        print(f"dim {prod.module.dim}")
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    if args.action == "iso":
        ok = modules_isomorphic(V, W, seed=args.seed)
        print("isomorphic" if ok else "not-isomorphic")
        return 0 if ok else 1
    if args.action == "coherence":
        U = _load_module(args.third, A) if args.third else W
        rep = coherence_check(V, W, U)
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    if args.action == "braid":
        if not args.rmatrix:
            raise UsageError("rep braid needs --rmatrix FILE")
        R = jsonio.rmatrix_from_json(jsonio.read_json(args.rmatrix))
        qt = verify_quasitriangular(A, R)
        rep, _c, _vw, _wv = braiding_check(A, R, V, W)
        U = _load_module(args.third, A) if args.third else W
        ok = braid_relation_check(A, R, V, W, U)
        rep.add("braid-relation", ok, None if ok else "braid relation fails")
        rep.checks = qt.checks + rep.checks
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    raise UsageError(f"unknown rep action {args.action!r}")


def _pointed_from_args(args):
    G = _load_group(args.group)
    omega = _load_cocycle(args.cocycle, G)
    return pointed_skeleton(G, omega)


def cmd_tube(args):
    from .tube import (
        build_tube,
        build_tube_prime,
        chi_iso,
        solve_pivotal,
        tube_vs_tube_prime,
        verify_morita_section,
        weak_bialgebra_obstruction,
    )

    if args.action == "build":
        from .tube import TubeFamily

        if args.skeleton:
            C = jsonio.skeleton_from_json(jsonio.read_json(args.skeleton))
        else:
            C = _pointed_from_args(args)
        level = args.level
        if level < 1:
            raise UsageError("--level must be >= 1")
        if args.primed:
            T = build_tube_prime(C, level)
        elif level == 1:
            T = build_tube(C)
        else:
            T = TubeFamily(C).algebra(level)
        rep = T.validate()
        print(f"dim {T.dim} center_dim {center_dim(T)}")
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    if args.action == "chi":
        C = _pointed_from_args(args)
        _map, _t2, rep = chi_iso(C)
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    if args.action == "morita":
        C = _pointed_from_args(args)
        rep = verify_morita_section(C, args.m, args.n)
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    if args.action == "obstruction":
        return _run_obstruction(args)
    if args.action == "pivotal":
        C = _pointed_from_args(args)
        t = solve_pivotal(C)
        if t is None:
            print("no pivotal rescaling found")
            return 1
        rep = tube_vs_tube_prime(C, t)
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    raise UsageError(f"unknown tube action {args.action!r}")


def _run_obstruction(args):
    from .tube import weak_bialgebra_obstruction

    if args.ring == "fib":
        ring = fib_fusion_ring()
    elif args.ring and os.path.exists(args.ring):
        ring = jsonio.fusion_ring_from_json(jsonio.read_json(args.ring))
    elif args.ring:
        raise UsageError(f"bad ring spec {args.ring!r}")
    else:
        raise UsageError("obstruction needs --ring (fib or a file)")
    if args.candidates and os.path.exists(args.candidates):
        cands = jsonio.read_json(args.candidates)
    elif args.ring == "fib" and not args.candidates:
        cands = [{"name": "z", "object": ["nu"], "jdim": 1}]
    else:
        raise UsageError("obstruction needs --candidates FILE")
    rep, pairs = weak_bialgebra_obstruction(ring, cands)
    _print_report(rep, args.json)
    for z, zp, total, bound in pairs:
        print(f"obstructed: {z.get('name')} (x) {zp.get('name')}: {total} > {bound}")
    return 0 if rep.ok else 1


def cmd_double(args):
    from .double import build_drinfeld_double, build_pairing, sharp_iso

    C = _pointed_from_args(args)
    if args.action == "build":
        P = build_pairing(C)
        _print_report(P.report, args.json)
        if not P.report.ok:
            return 1
        dbl = build_drinfeld_double(P)
        D = dbl.algebra
        rep = verify_weak_bialgebra(D, threads=args.threads)
        rep2 = verify_antipode(D, threads=args.threads)
        rep3 = verify_quasitriangular(D, dbl.r)
        if args.out:
            jsonio.write_json(args.out, jsonio.algebra_to_json(D))
        if args.rmatrix_out:
            jsonio.write_json(args.rmatrix_out, jsonio.rmatrix_to_json(D, dbl.r))
        print(f"dim {D.dim} conductor {D.conductor}")
        for rep_i in (rep, rep2, rep3):
            _print_report(rep_i, args.json)
        return 0 if (rep.ok and rep2.ok and rep3.ok) else 1
    if args.action == "sharp":
        rep, _dbl, _abox = sharp_iso(C)
        _print_report(rep, args.json)
        return 0 if rep.ok else 1
    raise UsageError(f"unknown double action {args.action!r}")


def make_parser():
    p = argparse.ArgumentParser(
        prog="whalg",
        description="exact constructors and verifiers for weak Hopf algebras",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument(
        "--threads", type=int, default=None,
        help="worker cap for verifier sweeps (default: WHALG_THREADS or 1)",
    )
    p.add_argument("--json", action="store_true", help="machine-readable reports")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an algebra and write it to JSON")
    b.add_argument("kind", choices=["b-g-omega", "a-g-omega", "a-m-c", "groupoid", "frobenius-double"])
    b.add_argument("--group")
    b.add_argument("--cocycle")
    b.add_argument("--skeleton")
    b.add_argument("--module")
    b.add_argument("--indiscrete", type=int)
    b.add_argument("--diagonal", type=int)
    b.add_argument("--matrix", type=int)
    b.add_argument("-o", "--out")
    b.add_argument("--rmatrix-out")
    b.set_defaults(fn=cmd_build)

    v = sub.add_parser("verify", help="run a verifier suite on an algebra file")
    v.add_argument("file")
    v.add_argument("--suite", choices=["wha", "qt", "base", "all"], default="all")
    v.add_argument("--rmatrix")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("compare", help="entrywise structure comparison")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--map")
    c.set_defaults(fn=cmd_compare)

    r = sub.add_parser("report", help="derived quantities of an algebra file")
    r.add_argument("file")
    r.set_defaults(fn=cmd_report)

    rep = sub.add_parser("rep", help="representation-category operations")
    rep.add_argument("action", choices=["tensor", "iso", "coherence", "braid"])
    rep.add_argument("--algebra", required=True)
    rep.add_argument("--left", required=True)
    rep.add_argument("--right", required=True)
    rep.add_argument("--third")
    rep.add_argument("--rmatrix")
    rep.set_defaults(fn=cmd_rep)

    t = sub.add_parser("tube", help="tube algebras and the Morita tower")
    t.add_argument("action", choices=["build", "chi", "morita", "obstruction", "pivotal"])
    t.add_argument("--skeleton")
    t.add_argument("--group")
    t.add_argument("--cocycle")
    t.add_argument("--level", type=int, default=1)
    t.add_argument("--primed", action="store_true")
    t.add_argument("--m", type=int, default=1)
    t.add_argument("--n", type=int, default=2)
    t.add_argument("--ring")
    t.add_argument("--candidates")
    t.set_defaults(fn=cmd_tube)

    o = sub.add_parser("obstruction", help="fusion-ring obstruction detector")
    o.add_argument("--ring", required=True)
    o.add_argument("--candidates")
    o.set_defaults(fn=_run_obstruction)

    d = sub.add_parser("double", help="pairing, double, and the sharp map")
    d.add_argument("action", choices=["build", "sharp"])
    d.add_argument("--group")
    d.add_argument("--cocycle")
    d.add_argument("-o", "--out")
    d.add_argument("--rmatrix-out")
    d.set_defaults(fn=cmd_double)

    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = default_threads()
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
