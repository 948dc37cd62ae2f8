import itertools

import pytest

from whalg.exactmath import Cyclotomic
from whalg.builders import build_a_g_omega
from whalg.groups import cyclic_group, standard_cocycle, trivial_cocycle
from whalg.skeleton import fib_fusion_ring, pointed_skeleton
from whalg.tube import (
    TubeFamily,
    build_tube,
    build_tube_bimodule,
    build_tube_prime,
    chi_iso,
    solve_pivotal,
    tube_generalized_associativity,
    tube_vs_tube_prime,
    verify_morita_section,
    weak_bialgebra_obstruction,
)
from whalg.wha import center_dim


def pointed(n, p):
    g = cyclic_group(n)
    w = standard_cocycle(n, p) if p else trivial_cocycle(g, conductor=n)
    return pointed_skeleton(g, w), g, w


def closed_form_tube_product(C, G, omega, left, right):
    """Independent oracle for the level-1 tube product (hand derivation)."""
    wp, (xp,), _ = left
    w, (x,), _ = right
    if x != G.prod((G.inv(wp), xp, wp)):
        return None, None
    y = G.prod((G.inv(w), x, w))
    coeff = omega(wp, x, w) / (omega(xp, wp, w) * omega(wp, w, y))
    t = G.mul(wp, w)
    return (t, (xp,), (G.prod((G.inv(t), xp, t)),)), coeff


@pytest.mark.parametrize("n,p", [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
def test_tube_dim_and_algebra_laws(n, p):
    C, g, w = pointed(n, p)
    T = build_tube(C)
    assert T.dim == n * n
    assert T.validate().ok


@pytest.mark.parametrize("name", ["z4", "z2xz2", "s3", "z6"])
def test_tube_laws_across_catalog(name):
    from whalg.groups import catalog_group

    G = catalog_group(name)
    C = pointed_skeleton(G, trivial_cocycle(G))
    T = build_tube(C)
    assert T.dim == G.order ** 2
    assert T.validate().ok
    Tp = build_tube_prime(C, 1)
    assert Tp.validate().ok


@pytest.mark.parametrize("n,p", [(2, 1), (3, 1), (3, 2), (4, 1)])
def test_tube_matches_closed_form_oracle(n, p):
    C, g, w = pointed(n, p)
    T = build_tube(C)
    for left in T.labels:
        for right in T.labels:
            lab, coeff = closed_form_tube_product(C, g, w, left, right)
            got = T.mul(T.basis_elem(T.label_index[left]), T.basis_elem(T.label_index[right]))
            if lab is None:
                assert got == {}
            else:
                assert got == {T.label_index[lab]: coeff}


def test_tube_z2_trivial_commutative_center():
    C, g, w = pointed(2, 0)
    T = build_tube(C)
    for i in range(T.dim):
        for j in range(T.dim):
            assert T.mul(T.basis_elem(i), T.basis_elem(j)) == T.mul(
                T.basis_elem(j), T.basis_elem(i)
            )
    assert center_dim(T) == 4


@pytest.mark.parametrize("n,p,lvl,expect", [(2, 0, 1, 4), (2, 0, 2, 16), (2, 1, 2, 16), (3, 1, 2, 81)])
def test_tube_prime_dims_and_laws(n, p, lvl, expect):
    C, g, w = pointed(n, p)
    Tp = build_tube_prime(C, lvl)
    assert Tp.dim == expect
    assert Tp.validate().ok


def test_tube_prime_level1_equals_multiplication_of_family():
    # compose^{111} on the unprimed side is the tube multiplication
    C, g, w = pointed(3, 1)
    fam = TubeFamily(C)
    T = fam.algebra(1)
    comp, bh, bg, bout = fam.compose_map(1, 1, 1)
    for (hi, gi), (oi, s) in comp.items():
        prod = T.mul(T.basis_elem(hi), T.basis_elem(gi))
        assert prod == {oi: s}


@pytest.mark.parametrize("n,p", [(2, 0), (2, 1), (3, 1)])
def test_morita_section(n, p):
    C, g, w = pointed(n, p)
    assert verify_morita_section(C, 1, 2).ok
    assert verify_morita_section(C, 1, 1).ok
    assert verify_morita_section(C, 2, 1).ok


def test_bimodule_axioms():
    C, g, w = pointed(2, 1)
    bim = build_tube_bimodule(C, 1, 2)
    assert bim.validate().ok


def test_generalized_associativity():
    C, g, w = pointed(2, 1)
    instances = list(itertools.product((1, 2), repeat=4))
    assert tube_generalized_associativity(C, instances).ok


@pytest.mark.parametrize("n,p", [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
def test_chi_isomorphism(n, p):
    C, g, w = pointed(n, p)
    chi_map, Tp2, rep = chi_iso(C)
    assert rep.ok, rep.render()
    assert Tp2.dim == n ** 4


def test_chi_with_closed_form_algebra():
    C, g, w = pointed(2, 1)
    A, _ = build_a_g_omega(g, w)
    chi_map, Tp2, rep = chi_iso(C, A)
    assert rep.ok, rep.render()


@pytest.mark.parametrize("n", [2, 3])
def test_tube_vs_tube_prime_trivial_omega(n):
    C, g, w = pointed(n, 0)
    one = Cyclotomic.one(C.conductor)
    t = {lab: one for lab in C.labels}
    rep = tube_vs_tube_prime(C, t)
    assert rep.ok, rep.render()


def test_tube_vs_tube_prime_sign_flip_z2_trivial():
    # flipping the sign of t at the nontrivial element: decided by the run
    C, g, w = pointed(2, 0)
    one = Cyclotomic.one(C.conductor)
    t = {0: one, 1: -one}
    rep = tube_vs_tube_prime(C, t)
    # the coboundary of t enters products in compensating pairs only when
    # the grading balances; record what actually happens
    assert isinstance(rep.ok, bool)


@pytest.mark.parametrize("n,p", [(2, 0), (3, 0), (3, 1), (3, 2), (4, 1)])
def test_solve_pivotal_then_verify(n, p):
    C, g, w = pointed(n, p)
    t = solve_pivotal(C)
    assert t is not None
    rep = tube_vs_tube_prime(C, t)
    assert rep.ok, rep.render()


def test_obstruction_fibonacci():
    fib = fib_fusion_ring()
    cands = [{"name": "z", "object": ["nu"], "jdim": 1}]
    rep, pairs = weak_bialgebra_obstruction(fib, cands)
    assert not rep.ok
    assert pairs
    z, zp, total, bound = pairs[0]
    assert total == 2 and bound == 1


def test_obstruction_pointed_ring_clear():
    C, g, w = pointed(3, 1)
    cands = [{"name": str(a), "object": [a], "jdim": 1} for a in C.labels]
    rep, pairs = weak_bialgebra_obstruction(C.ring, cands)
    assert rep.ok
    assert not pairs


def test_obstruction_unit_candidate_never_contributes():
    fib = fib_fusion_ring()
    cands = [{"name": "1", "object": ["1"], "jdim": 1}]
    rep, pairs = weak_bialgebra_obstruction(fib, cands)
    assert rep.ok


def test_obstruction_monotone():
    fib = fib_fusion_ring()
    small = [{"name": "z", "object": ["nu"], "jdim": 1}]
    bigger = [{"name": "z", "object": ["nu"], "jdim": 1},
              {"name": "zz", "object": ["nu", "nu"], "jdim": 2}]
    _, pairs_small = weak_bialgebra_obstruction(fib, small)
    _, pairs_big = weak_bialgebra_obstruction(fib, bigger)
    small_keys = {(id0["name"], id1["name"]) for id0, id1, _, _ in pairs_small}
    big_keys = {(id0["name"], id1["name"]) for id0, id1, _, _ in pairs_big}
    assert small_keys <= big_keys
