"""Acceptance suite: one test per criterion, exact arithmetic throughout.

Every criterion prints one PASS/FAIL line (visible under pytest -s); all
tolerances are zero because the scalars are exact cyclotomics.
"""

import multiprocessing
import time

import pytest

from whalg.exactmath import Cyclotomic
from whalg.builders import build_a_g_omega, build_a_m_c, build_b_g_omega
from whalg.groups import (
    catalog_group,
    standard_cocycle,
    trivial_cocycle,
    validate_cocycle,
    validate_group,
)
from whalg.repcat import (
    coherence_check,
    k_module,
    left_unitor,
    modules_isomorphic,
    reduced_R_roundtrip,
    right_unitor,
    tensor_product,
    tensor_unit,
    validate_module,
)
from whalg.skeleton import (
    boxtimes_rev_skeleton,
    fib_fusion_ring,
    pointed_skeleton,
    regular_module,
    right_regular_module,
    validate_module_pentagon,
    validate_pentagon,
)
from whalg.tube import (
    build_tube,
    chi_iso,
    verify_morita_section,
    weak_bialgebra_obstruction,
)
from whalg.double import build_drinfeld_double, build_pairing, sharp_iso
from whalg.wha import (
    RMatrixCandidate,
    base_algebras,
    center_dim,
    compare_structure,
    verify_antipode,
    verify_quasitriangular,
    verify_weak_bialgebra,
)

THREADS = min(2, multiprocessing.cpu_count())

CATALOG = ["z2", "z3", "z4", "z2xz2", "s3", "z6"]


def catalog_cocycles(name):
    """{trivial} union {standard_cocycle(n, p)} for cyclic groups."""
    G = catalog_group(name)
    if name.startswith("z") and "x" not in name:
        n = G.order
        out = []
        for p in range(n):
            if p == 0:
                out.append((G, trivial_cocycle(G, conductor=n)))
            else:
                w = standard_cocycle(n, p)
                out.append((w.group, w))
        return out
    return [(G, trivial_cocycle(G))]


def _line(num, ok, extra=""):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {num}: {status}{(' ' + extra) if extra else ''}")
    assert ok


def test_criterion_1_weak_hopf_axiom_sweep():
    t0 = time.monotonic()
    ok = True
    for name in CATALOG:
        for G, omega in catalog_cocycles(name):
            B = build_b_g_omega(G, omega)
            ok = ok and verify_weak_bialgebra(B, threads=THREADS).ok
            ok = ok and verify_antipode(B, threads=THREADS).ok
            del B
            A, _R = build_a_g_omega(G, omega)
            ok = ok and verify_weak_bialgebra(A, threads=THREADS).ok
            ok = ok and verify_antipode(A, threads=THREADS).ok
            del A
            if not ok:
                break
        if not ok:
            break
    _line(1, ok, f"(full sweep {time.monotonic() - t0:.0f}s, threads={THREADS})")


def test_criterion_2_quasitriangular_and_ybe():
    t0 = time.monotonic()
    ok = True
    small_t = None
    for name in CATALOG:
        for G, omega in catalog_cocycles(name):
            A, R = build_a_g_omega(G, omega)
            ok = ok and verify_quasitriangular(A, R).ok
            del A
            if not ok:
                break
        if name == "z4":
            small_t = time.monotonic() - t0
        if not ok:
            break
    _line(2, ok, f"(|G|<=4 portion {small_t:.0f}s, full {time.monotonic() - t0:.0f}s)")


def test_criterion_3_closed_form_reproduction():
    ok = True
    for n in (2, 3):
        for p in range(n):
            G = catalog_group(f"z{n}")
            omega = (
                trivial_cocycle(G, conductor=n) if p == 0 else standard_cocycle(n, p)
            )
            B = build_b_g_omega(G, omega)
            C, M = right_regular_module(G, omega)
            gen = build_a_m_c(C, M)
            amap = [B.label_index[("f", a, y, x)] for (a, y, x) in gen.labels]
            ok = ok and compare_structure(gen, B, amap).ok
            A, _ = build_a_g_omega(G, omega)
            Cb, Mb = boxtimes_rev_skeleton(G, omega)
            genb = build_a_m_c(Cb, Mb)
            bmap = [A.label_index[("e", ab[0], ab[1], y, x)] for (ab, y, x) in genb.labels]
            ok = ok and compare_structure(genb, A, bmap).ok
    _line(3, ok)


def test_criterion_4_dimension_and_base_algebra_facts():
    ok = True
    for name in CATALOG:
        for G, omega in catalog_cocycles(name):
            g_order = G.order
            B = build_b_g_omega(G, omega)
            ok = ok and B.dim == g_order ** 3
            ok = ok and base_algebras(B).dim_l == g_order
            ok = ok and center_dim(B) == g_order
            del B
            A, _ = build_a_g_omega(G, omega)
            ok = ok and A.dim == g_order ** 4
            ok = ok and base_algebras(A).dim_l == g_order
            if omega.name == "trivial" and G.is_abelian():
                ok = ok and center_dim(A) == g_order ** 2
            del A
            if not ok:
                break
        if not ok:
            break
    _line(4, ok)


def test_criterion_5_representation_fusion_and_coherence():
    ok = True
    for n in (2, 3):
        for p in range(n):
            G = catalog_group(f"z{n}")
            omega = (
                trivial_cocycle(G, conductor=n) if p == 0 else standard_cocycle(n, p)
            )
            B = build_b_g_omega(G, omega)
            mods = {g: k_module(B, G, omega, g) for g in G.elements()}
            for V in mods.values():
                ok = ok and validate_module(B, V).ok
            for a in G.elements():
                for b in G.elements():
                    prod = tensor_product(mods[a], mods[b]).module
                    ok = ok and modules_isomorphic(prod, mods[G.mul(a, b)])
            unit_mod = tensor_unit(B)
            l_mat, l_prod = left_unitor(mods[0], unit_mod)
            r_mat, r_prod = right_unitor(mods[0], unit_mod)
            ok = ok and l_mat.rank() == mods[0].dim and r_mat.rank() == mods[0].dim
            g1 = 1 % G.order
            rep = coherence_check(mods[g1], mods[g1], mods[g1], unit_mod)
            ok = ok and rep.ok
            if not ok:
                break
        if not ok:
            break
    _line(5, ok)


def test_criterion_6_braiding_roundtrip():
    ok = True
    for n in (2, 3):
        for p in range(n):
            G = catalog_group(f"z{n}")
            omega = (
                trivial_cocycle(G, conductor=n) if p == 0 else standard_cocycle(n, p)
            )
            A, R = build_a_g_omega(G, omega)
            ok = ok and verify_quasitriangular(A, R).ok
            ok = ok and reduced_R_roundtrip(A, R)
    _line(6, ok)


def test_criterion_7_tube_bridge():
    ok = True
    for n in (2, 3):
        for p in range(n):
            G = catalog_group(f"z{n}")
            omega = (
                trivial_cocycle(G, conductor=n) if p == 0 else standard_cocycle(n, p)
            )
            C = pointed_skeleton(G, omega)
            _map, tp2, rep = chi_iso(C)
            ok = ok and rep.ok and tp2.dim == n ** 4
            ok = ok and verify_morita_section(C, 1, 2).ok
    G2 = catalog_group("z2")
    C2 = pointed_skeleton(G2, trivial_cocycle(G2))
    T = build_tube(C2)
    ok = ok and T.dim == 4 and center_dim(T) == 4 and T.validate().ok
    _line(7, ok)


def test_criterion_8_obstruction():
    fib = fib_fusion_ring()
    rep, pairs = weak_bialgebra_obstruction(
        fib, [{"name": "z", "object": ["nu"], "jdim": 1}]
    )
    ok = (not rep.ok) and len(pairs) == 1 and pairs[0][2] == 2 and pairs[0][3] == 1
    for name in ("z2", "z3", "s3"):
        G = catalog_group(name)
        C = pointed_skeleton(G, trivial_cocycle(G))
        rep2, pairs2 = weak_bialgebra_obstruction(
            C.ring, [{"name": str(a), "object": [a], "jdim": 1} for a in C.labels]
        )
        ok = ok and rep2.ok and not pairs2
    _line(8, ok)


def test_criterion_9_double():
    ok = True
    for n in (2, 3):
        for p in range(n):
            G = catalog_group(f"z{n}")
            omega = (
                trivial_cocycle(G, conductor=n) if p == 0 else standard_cocycle(n, p)
            )
            C = pointed_skeleton(G, omega)
            P = build_pairing(C)
            ok = ok and P.report.ok and P.matrix.rank() == n ** 3
            dbl = build_drinfeld_double(P)
            D = dbl.algebra
            ok = ok and D.dim == n ** 4
            ok = ok and verify_weak_bialgebra(D).ok
            ok = ok and verify_antipode(D).ok
            ok = ok and verify_quasitriangular(D, dbl.r).ok
            rep, _, _ = sharp_iso(C, double=dbl, pairing=P)
            ok = ok and rep.ok
            if not ok:
                break
        if not ok:
            break
    _line(9, ok)


def test_criterion_10_negative_controls():
    from whalg.exactmath import SparseMatrix, SparseTensor3, root_of_unity
    from whalg.groups import cyclic_group
    from whalg.wha import WeakHopfAlgebra

    ok = True

    # broken group table
    rep = validate_group([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    ok = ok and (not rep.ok) and bool(rep.first_failure)

    # tampered cocycle
    g3 = cyclic_group(3)
    w = trivial_cocycle(g3, conductor=3)
    w.values[(1, 1, 1)] = root_of_unity(3)
    rep = validate_cocycle(g3, w)
    ok = ok and (not rep.ok) and "fails at" in rep.first_failure

    # negated F entry
    w1 = standard_cocycle(3, 1)
    C = pointed_skeleton(w1.group, w1)
    key = (1, 1, 1, 0)
    C.F[key] = -C.F[key]
    rep = validate_pentagon(C)
    ok = ok and (not rep.ok) and "pentagon fails" in rep.first_failure

    # perturbed module associator
    C2 = pointed_skeleton(w1.group, w1)
    M = regular_module(C2)
    M.L[(1, 1, 1)] = M.L[(1, 1, 1)] * root_of_unity(3)
    rep = validate_module_pentagon(M)
    ok = ok and not rep.ok

    # zeroed counit
    g2 = cyclic_group(2)
    B = build_b_g_omega(g2, trivial_cocycle(g2))
    broken = WeakHopfAlgebra(
        list(B.labels), B.conductor,
        SparseTensor3(B.mu.dims, B.conductor, dict(B.mu.data)),
        dict(B.unit),
        SparseTensor3(B.delta.dims, B.conductor, dict(B.delta.data)),
        {},
        SparseMatrix(B.dim, B.dim, B.conductor, dict(B.antipode.data)),
    )
    rep = verify_weak_bialgebra(broken)
    ok = ok and (not rep.ok) and rep.first_failure.name == "counit-law"

    # identity antipode
    broken = WeakHopfAlgebra(
        list(B.labels), B.conductor,
        SparseTensor3(B.mu.dims, B.conductor, dict(B.mu.data)),
        dict(B.unit),
        SparseTensor3(B.delta.dims, B.conductor, dict(B.delta.data)),
        dict(B.counit),
        SparseMatrix.identity(B.dim, B.conductor),
    )
    rep = verify_antipode(broken)
    ok = ok and (not rep.ok) and rep.first_failure.name == "axiom4-eq1"
    ok = ok and bool(rep.first_failure.detail)

    # K-module with the cocycle factor dropped
    w2 = standard_cocycle(2, 1)
    B2 = build_b_g_omega(w2.group, w2)
    V = k_module(B2, w2.group, w2, 1)
    act = SparseTensor3(V.action.dims, B2.conductor)
    for (i, r, c), v in V.action.data.items():
        act.add_to(i, r, c, Cyclotomic.one(B2.conductor))
    bad = type(V)(B2, V.dim, act)
    rep = validate_module(B2, bad)
    ok = ok and (not rep.ok) and bool(rep.first_failure.detail)

    # R-matrix candidates: Delta(1) and the leg swap
    A, R = build_a_g_omega(g2, trivial_cocycle(g2))
    rep = verify_quasitriangular(A, RMatrixCandidate(A.delta_of_unit()))
    ok = ok and not rep.ok
    swapped = RMatrixCandidate({(j, i): c for (i, j), c in R.terms.items()})
    rep = verify_quasitriangular(A, swapped)
    ok = ok and not rep.ok

    # tampered mu caught with a concrete counterexample
    mu = SparseTensor3(B.mu.dims, B.conductor, dict(B.mu.data))
    key = sorted(mu.data)[0]
    mu.data[key] = mu.data[key] + mu.data[key]
    broken = WeakHopfAlgebra(
        list(B.labels), B.conductor, mu, dict(B.unit),
        SparseTensor3(B.delta.dims, B.conductor, dict(B.delta.data)),
        dict(B.counit),
        SparseMatrix(B.dim, B.dim, B.conductor, dict(B.antipode.data)),
    )
    rep = verify_weak_bialgebra(broken)
    ok = ok and (not rep.ok) and bool(rep.first_failure.detail)

    _line(10, ok)
