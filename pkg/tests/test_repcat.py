import pytest

from whalg.exactmath import Cyclotomic
from whalg.builders import build_a_g_omega, build_b_g_omega
from whalg.groups import cyclic_group, standard_cocycle, trivial_cocycle
from whalg.repcat import (
    braid_relation_check,
    braiding_check,
    braiding_naturality,
    coherence_check,
    dual_module,
    intertwiner_space,
    k_module,
    modules_isomorphic,
    reduced_R_roundtrip,
    regular_module,
    tensor_product,
    tensor_unit,
    validate_module,
)
from whalg.wha import RMatrixCandidate, verify_quasitriangular


def setup_b(n=2, p=0):
    g = cyclic_group(n)
    w = standard_cocycle(n, p) if p else trivial_cocycle(g, conductor=max(1, n if p else 1))
    B = build_b_g_omega(g, w)
    return g, w, B


def setup_a(n=2, p=0):
    g = cyclic_group(n)
    w = standard_cocycle(n, p) if p else trivial_cocycle(g)
    A, R = build_a_g_omega(g, w)
    return g, w, A, R


def test_k_module_validates():
    g, w, B = setup_b(3, 1)
    for gg in g.elements():
        V = k_module(B, g, w, gg)
        assert validate_module(B, V).ok


def test_k_module_tampered_fails():
    g, w, B = setup_b(2, 1)
    V = k_module(B, g, w, 1)
    # drop the omega factor: rebuild action with omega = 1 everywhere
    from whalg.exactmath import SparseTensor3

    act = SparseTensor3(V.action.dims, B.conductor)
    for (i, r, c), v in V.action.data.items():
        act.add_to(i, r, c, Cyclotomic.one(B.conductor))
    bad = type(V)(B, V.dim, act, name="bad")
    rep = validate_module(B, bad)
    assert not rep.ok
    assert rep.first_failure.detail


def test_regular_module_validates():
    _, _, A, _ = setup_a(2, 1)
    assert validate_module(A, regular_module(A)).ok


def test_tensor_unit_validates_and_dim():
    _, _, B = setup_b(2)
    U = tensor_unit(B)
    assert U.dim == 2
    assert validate_module(B, U).ok
    _, _, A, _ = setup_a(2)
    UA = tensor_unit(A)
    assert UA.dim == 2
    assert validate_module(A, UA).ok


def test_tensor_product_of_k_modules():
    g, w, B = setup_b(2)
    V = k_module(B, g, w, 1)
    prod = tensor_product(V, V)
    assert prod.module.dim == 2  # = |G|
    assert validate_module(B, prod.module).ok
    # retract identities
    assert prod.r.matmul(prod.i) == prod.r.matmul(prod.i).identity(prod.module.dim, B.conductor)
    assert prod.i.matmul(prod.r) == prod.idempotent
    ee = prod.idempotent.matmul(prod.idempotent)
    assert ee == prod.idempotent


def test_fusion_rule_of_k_modules():
    for n, p in [(2, 0), (2, 1), (3, 0), (3, 1)]:
        g = cyclic_group(n)
        w = standard_cocycle(n, p) if p else trivial_cocycle(g)
        B = build_b_g_omega(g, w)
        mods = {gg: k_module(B, g, w, gg) for gg in g.elements()}
        for a in g.elements():
            for b in g.elements():
                prod = tensor_product(mods[a], mods[b]).module
                assert modules_isomorphic(prod, mods[g.mul(a, b)])
                if n == 2 and a != b:
                    other = mods[g.mul(g.mul(a, b), 1)]
                    assert not modules_isomorphic(prod, other)


def test_intertwiner_space_dims():
    g, w, B = setup_b(3)
    V = k_module(B, g, w, 1)
    W = k_module(B, g, w, 2)
    assert intertwiner_space(V, W)[0] == 0
    assert intertwiner_space(V, V)[0] == 1  # simple module


def test_dual_modules():
    g, w, B = setup_b(2)
    U = tensor_unit(B)
    assert modules_isomorphic(dual_module(U, "left"), U)
    V = k_module(B, g, w, 1)
    Vd = dual_module(V, "left")
    assert validate_module(B, Vd).ok
    assert modules_isomorphic(Vd, k_module(B, g, w, g.inv(1)))
    assert Vd.dim == V.dim


def test_coherence_k_modules():
    g, w, B = setup_b(2, 1)
    V = k_module(B, g, w, 1)
    rep = coherence_check(V, V, V)
    assert rep.ok, rep.render()


def test_coherence_regular_a():
    _, _, A, _ = setup_a(2)
    V = regular_module(A)
    rep = coherence_check(V, V, V)
    assert rep.ok, rep.render()


def test_braiding_regular():
    _, _, A, R = setup_a(2, 1)
    assert verify_quasitriangular(A, R).ok
    V = regular_module(A)
    rep, c, vw, wv = braiding_check(A, R, V, V)
    assert rep.ok, rep.render()
    assert braid_relation_check(A, R, V, V, V)


def test_braiding_unit_is_unitor_composite():
    _, _, A, R = setup_a(2)
    U = tensor_unit(A)
    V = regular_module(A)
    from whalg.repcat import braiding_from_R, left_unitor, right_unitor

    c, uv, vu = braiding_from_R(A, R, U, V)
    # c_{1,V} must equal l_V^-1 . (right unitor transported): check as
    # module-map iso between 1.V and V.1 with matching unitor evaluations
    l_mat, l_prod = left_unitor(V, U)
    r_mat, r_prod = right_unitor(V, U)
    # braiding computed on the same product objects
    c2, _, _ = braiding_from_R(A, R, U, V, l_prod, r_prod)
    assert r_mat.matmul(c2) == l_mat


def test_braiding_naturality():
    _, _, A, R = setup_a(2, 1)
    V = regular_module(A)
    U = tensor_unit(A)
    assert braiding_naturality(A, R, V, U)
    assert braiding_naturality(A, R, V, V)


@pytest.mark.parametrize("n,p", [(2, 0), (2, 1), (3, 1)])
def test_reduced_r_roundtrip(n, p):
    _, _, A, R = setup_a(n, p)
    assert reduced_R_roundtrip(A, R)


def test_bad_candidates_are_caught():
    # scaling: the verifier fails; the raw roundtrip map is linear in the
    # candidate, so it reproduces 2R and cannot see the scaling by itself
    _, _, A, R = setup_a(2)
    two = Cyclotomic.rational(A.conductor, 2)
    scaled = RMatrixCandidate({k: v * two for k, v in R.terms.items()})
    assert not verify_quasitriangular(A, scaled).ok
    assert reduced_R_roundtrip(A, scaled)
    # swapping the legs: both the verifier and the roundtrip reject
    swapped = RMatrixCandidate({(j, i): c for (i, j), c in R.terms.items()})
    assert not verify_quasitriangular(A, swapped).ok
    assert not reduced_R_roundtrip(A, swapped)
