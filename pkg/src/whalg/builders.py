"""Concrete weak Hopf algebra constructors.

Two families come with closed-form structure constants (the |G|^3 algebra of
a group with 3-cocycle, and its |G|^4 quasi-triangular double-sided variant);
the general builder assembles the same data from skeletal module input and is
pinned against the closed forms entrywise in the tests.  Groupoid algebras
and the double of a separable Frobenius algebra round out the catalog.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exactmath import Cyclotomic, SparseMatrix, SparseTensor3
from .groups import GroupReport, validate_cocycle
from .skeleton import SkeletonError, dual_data_pointed
from .wha import RMatrixCandidate, WeakHopfAlgebra, _acc


def _new_tensors(d, n):
    return SparseTensor3((d, d, d), n), SparseTensor3((d, d, d), n)


def build_b_g_omega(G, omega, check=True):
    """The |G|^3-dimensional weak Hopf algebra of (G, omega).

    Basis f_{a|y|x}; right-regular conventions: the product of f_{a'|y'|x'}
    with f_{a|y|x} requires y' = ya, x' = xa and lands on f_{aa'|y|x} with
    coefficient omega(y,a,a')/omega(x,a,a').
    """
    if check:
        rep = validate_cocycle(G, omega)
        if not rep.ok:
            raise ValueError(f"invalid cocycle: {rep.first_failure}")
    n = omega.conductor
    els = list(G.elements())
    labels = [("f", a, y, x) for a, y, x in itertools.product(els, repeat=3)]
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    mu, delta = _new_tensors(d, n)
    mul = G.mul

    for a, y, x in itertools.product(els, repeat=3):
        right = index[("f", a, y, x)]
        ya, xa = mul(y, a), mul(x, a)
        for ap in els:
            left = index[("f", ap, ya, xa)]
            out = index[("f", mul(a, ap), y, x)]
            coeff = omega(y, a, ap) / omega(x, a, ap)
            mu.add_to(left, right, out, coeff)

    one = Cyclotomic.one(n)
    unit = {index[("f", G.identity, y, x)]: one for y in els for x in els}

    for a, y, x in itertools.product(els, repeat=3):
        i = index[("f", a, y, x)]
        for z in els:
            delta.add_to(i, index[("f", a, y, z)], index[("f", a, z, x)], one)

    counit = {index[("f", a, y, y)]: one for a in els for y in els}

    antipode = SparseMatrix(d, d, n)
    for a, y, x in itertools.product(els, repeat=3):
        i = index[("f", a, y, x)]
        ai = G.inv(a)
        coeff = omega(y, a, ai) / omega(x, a, ai)
        antipode.add_to(index[("f", ai, mul(x, a), mul(y, a))], i, coeff)

    return WeakHopfAlgebra(
        labels, n, mu, unit, delta, counit, antipode,
        name=f"B({G.name},{omega.name})",
        meta={"builder": "b-g-omega", "group": G.name, "cocycle": omega.name},
    )


def build_a_g_omega(G, omega, check=True):
    """The |G|^4-dimensional algebra of (G, omega) plus its R-matrix.

    Basis e_{a|b|y|x}; structure constants are the closed three-ratio forms,
    and R = sum_{a,b,z} omega(a,z,b)^-1 e_{1|b|az|z} (x) e_{a|1|z|zb}.
    """
    if check:
        rep = validate_cocycle(G, omega)
        if not rep.ok:
            raise ValueError(f"invalid cocycle: {rep.first_failure}")
    n = omega.conductor
    els = list(G.elements())
    labels = [("e", a, b, y, x) for a, b, y, x in itertools.product(els, repeat=4)]
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    mu, delta = _new_tensors(d, n)
    mul = G.mul
    e_id = G.identity

    for a, b, y, x in itertools.product(els, repeat=4):
        right = index[("e", a, b, y, x)]
        ay, ax = mul(a, y), mul(a, x)
        ayb, axb = mul(ay, b), mul(ax, b)
        for ap, bp in itertools.product(els, repeat=2):
            left = index[("e", ap, bp, ayb, axb)]
            out = index[("e", mul(ap, a), mul(b, bp), y, x)]
            coeff = (
                (omega(ap, a, x) / omega(ap, a, y))
                * (omega(ap, ax, b) / omega(ap, ay, b))
                * (omega(mul(ap, ay), b, bp) / omega(mul(ap, ax), b, bp))
            )
            mu.add_to(left, right, out, coeff)

    one = Cyclotomic.one(n)
    unit = {index[("e", e_id, e_id, y, x)]: one for y in els for x in els}

    for a, b, y, x in itertools.product(els, repeat=4):
        i = index[("e", a, b, y, x)]
        for z in els:
            delta.add_to(i, index[("e", a, b, y, z)], index[("e", a, b, z, x)], one)

    counit = {index[("e", a, b, y, y)]: one for a, b, y in itertools.product(els, repeat=3)}

    antipode = SparseMatrix(d, d, n)
    for a, b, y, x in itertools.product(els, repeat=4):
        i = index[("e", a, b, y, x)]
        ai, bi = G.inv(a), G.inv(b)
        ayb = G.prod((a, y, b))
        axb = G.prod((a, x, b))
        coeff = (
            (omega(y, b, bi) / omega(x, b, bi))
            * (omega(a, y, b) / omega(a, x, b))
            * (omega(a, ai, axb) / omega(a, ai, ayb))
        )
        antipode.add_to(index[("e", ai, bi, axb, ayb)], i, coeff)

    A = WeakHopfAlgebra(
        labels, n, mu, unit, delta, counit, antipode,
        name=f"A({G.name},{omega.name})",
        meta={"builder": "a-g-omega", "group": G.name, "cocycle": omega.name},
    )

    terms = {}
    for a, b, z in itertools.product(els, repeat=3):
        i = index[("e", e_id, b, mul(a, z), z)]
        j = index[("e", a, e_id, z, mul(z, b))]
        terms[(i, j)] = omega(a, z, b).inverse()
    return A, RMatrixCandidate(terms)


def build_a_m_c(C, M, dual=None):
    """General multiplicity-free builder from skeletal module data.

    Requires grouplike skeletal data (one-dimensional composite hom spaces);
    the antipode needs dual data, computed from C when not supplied.
    """
    if not C.ring.is_grouplike():
        raise SkeletonError("builder requires grouplike (multiplicity-free, "
                            "one-path) fusion data")
    if dual is None:
        dual = dual_data_pointed(C)
    n = C.conductor
    labels = [(a, y, x) for a in C.labels for y in M.objects for x in M.objects]
    index = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    mu, delta = _new_tensors(d, n)
    act = M.act

    for a, y, x in itertools.product(C.labels, M.objects, M.objects):
        right = index[(a, y, x)]
        ay, ax = act(a, y), act(a, x)
        for b in C.labels:
            left = index[(b, ay, ax)]
            out = index[(C.fuse(b, a), y, x)]
            coeff = M.massoc(b, a, x) / M.massoc(b, a, y)
            mu.add_to(left, right, out, coeff)

    one = Cyclotomic.one(n)
    unit = {index[(C.unit, y, x)]: one for y in M.objects for x in M.objects}

    for a, y, x in itertools.product(C.labels, M.objects, M.objects):
        i = index[(a, y, x)]
        for z in M.objects:
            delta.add_to(i, index[(a, y, z)], index[(a, z, x)], one)

    counit = {index[(a, y, y)]: one for a in C.labels for y in M.objects}

    antipode = SparseMatrix(d, d, n)
    for a, y, x in itertools.product(C.labels, M.objects, M.objects):
        i = index[(a, y, x)]
        ar = dual.right_dual(a)
        ay, ax = act(a, y), act(a, x)
        coeff = (
            dual.coev[ar]
            * M.massoc(ar, a, x)
            * M.massoc(a, ar, ay).inverse()
            * dual.ev[ar]
        )
        antipode.add_to(index[(ar, ax, ay)], i, coeff)

    return WeakHopfAlgebra(
        labels, n, mu, unit, delta, counit, antipode,
        name=f"A[{M.name} over {C.name}]",
        meta={"builder": "a-m-c", "category": C.name, "module": M.name},
    )


# ---------------------------------------------------------------------------
# groupoid algebras
# ---------------------------------------------------------------------------


class Groupoid:
    """Finite groupoid: explicit morphism list with a composition table.

    morphisms: list of names; src/tgt: name -> object; comp[(h, g)] = h . g
    defined exactly when src(h) = tgt(g).
    """

    def __init__(self, objects, morphisms, src, tgt, comp):
        self.objects = list(objects)
        self.morphisms = list(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.comp = dict(comp)
        rep = self.validate()
        if not rep.ok:
            raise ValueError(f"not a groupoid: {rep.first_failure}")

    def validate(self):
        ms = self.morphisms
        comp = self.comp
        for (h, g), k in comp.items():
            if self.src[h] != self.tgt[g]:
                return GroupReport(False, f"composite {h} . {g} not composable")
            if self.src[k] != self.src[g] or self.tgt[k] != self.tgt[h]:
                return GroupReport(False, f"composite {h} . {g} has wrong endpoints")
        for h in ms:
            for g in ms:
                defined = (h, g) in comp
                if defined != (self.src[h] == self.tgt[g]):
                    return GroupReport(False, f"composability mismatch at ({h}, {g})")
        for f in ms:
            for g in ms:
                for h in ms:
                    if (g, f) in comp and (h, g) in comp:
                        if comp[(h, comp[(g, f)])] != comp[(comp[(h, g)], f)]:
                            return GroupReport(False, f"associativity fails at ({h},{g},{f})")
        self.identity = {}
        for a in self.objects:
            for e in ms:
                if self.src[e] == self.tgt[e] == a:
                    if all(comp[(e, g)] == g for g in ms if self.tgt[g] == a) and all(
                        comp[(g, e)] == g for g in ms if self.src[g] == a
                    ):
                        self.identity[a] = e
                        break
            if a not in self.identity:
                return GroupReport(False, f"object {a} has no identity morphism")
        self.inverse = {}
        for g in ms:
            for h in ms:
                if (
                    (h, g) in comp
                    and (g, h) in comp
                    and comp[(h, g)] == self.identity[self.src[g]]
                    and comp[(g, h)] == self.identity[self.tgt[g]]
                ):
                    self.inverse[g] = h
                    break
            if g not in self.inverse:
                return GroupReport(False, f"morphism {g} is not invertible")
        return GroupReport(True)


def indiscrete_groupoid(n_objects):
    """One morphism between every ordered pair of objects."""
    objects = list(range(n_objects))
    morphisms = [(b, a) for b in objects for a in objects]  # (target, source)
    src = {m: m[1] for m in morphisms}
    tgt = {m: m[0] for m in morphisms}
    comp = {}
    for h in morphisms:
        for g in morphisms:
            if h[1] == g[0]:
                comp[(h, g)] = (h[0], g[1])
    return Groupoid(objects, morphisms, src, tgt, comp)


def group_as_groupoid(G):
    objects = ["*"]
    morphisms = list(G.elements())
    src = {m: "*" for m in morphisms}
    tgt = {m: "*" for m in morphisms}
    comp = {(h, g): G.mul(h, g) for h in morphisms for g in morphisms}
    return Groupoid(objects, morphisms, src, tgt, comp)


def build_groupoid_algebra(gpd, conductor=1):
    """Groupoid algebra with Delta(g) = g (x) g, eps = 1, S(g) = g^-1."""
    labels = list(gpd.morphisms)
    index = {m: i for i, m in enumerate(labels)}
    d = len(labels)
    n = conductor
    one = Cyclotomic.one(n)
    mu, delta = _new_tensors(d, n)
    for (h, g), k in gpd.comp.items():
        mu.add_to(index[h], index[g], index[k], one)
    unit = {index[gpd.identity[a]]: one for a in gpd.objects}
    for m in labels:
        i = index[m]
        delta.add_to(i, i, i, one)
    counit = {i: one for i in range(d)}
    antipode = SparseMatrix(d, d, n)
    for m in labels:
        antipode.add_to(index[gpd.inverse[m]], index[m], one)
    return WeakHopfAlgebra(
        labels, n, mu, unit, delta, counit, antipode,
        name="k[groupoid]",
        meta={"builder": "groupoid"},
    )


# ---------------------------------------------------------------------------
# separable Frobenius algebras and their doubles
# ---------------------------------------------------------------------------


class SeparableFrobenius:
    """Algebra with a bimodule-map comultiplication s splitting mu."""

    def __init__(self, dim, conductor, mu_pairs, unit, s_terms, delta, name="B"):
        self.dim = dim
        self.conductor = conductor
        self.mu_pairs = mu_pairs      # (i, j) -> list of (k, coeff)
        self.unit = unit              # sparse vector
        self.s_terms = s_terms        # i -> list of (j, k, coeff)
        self.delta = delta            # sparse covector
        self.name = name

    def mul(self, u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                for k, c in self.mu_pairs.get((i, j), ()):
                    _acc(out, k, ci * cj * c)
        return out

    def s_of(self, u):
        out = {}
        for i, ci in u.items():
            for j, k, c in self.s_terms.get(i, ()):
                _acc(out, (j, k), ci * c)
        return out

    def delta_of(self, u):
        tot = Cyclotomic.zero(self.conductor)
        for i, ci in u.items():
            e = self.delta.get(i)
            if e:
                tot = tot + ci * e
        return tot

    def p(self):
        return self.s_of(self.unit)

    def validate(self):
        from .report import Report

        rep = Report(self.name, "separable-frobenius")
        one = Cyclotomic.one(self.conductor)
        d = self.dim

        detail = None
        for x in range(d):
            for y in range(d):
                sx = self.s_of({x: one})
                sxy = self.s_of(self.mul({x: one}, {y: one}))
                lhs = {}
                for (a, b), c in sx.items():
                    for k, v in self.mul({b: c}, {y: one}).items():
                        _acc(lhs, (a, k), v)
                rhs = {}
                sy = self.s_of({y: one})
                for (a, b), c in sy.items():
                    for k, v in self.mul({x: one}, {a: c}).items():
                        _acc(rhs, (k, b), v)
                if lhs != sxy or rhs != sxy:
                    detail = f"s is not a bimodule map at ({x}, {y})"
                    break
            if detail:
                break
        rep.add("s-bimodule-map", detail is None, detail)

        detail = None
        for x in range(d):
            ms = {}
            for (a, b), c in self.s_of({x: one}).items():
                for k, v in self.mul({a: c}, {b: one}).items():
                    _acc(ms, k, v)
            if ms != {x: one}:
                detail = f"m . s != id at basis {x}"
                break
        rep.add("s-splits-mu", detail is None, detail)

        p = self.p()
        detail = None
        for x in range(d):
            lhs = {}
            rhs = {}
            for (i, j), c in p.items():
                for k, v in self.mul({x: one}, {i: c}).items():
                    _acc(lhs, (k, j), v)
                for k, v in self.mul({j: c}, {x: one}).items():
                    _acc(rhs, (i, k), v)
            if lhs != rhs:
                detail = f"x p(1) (x) p(2) != p(1) (x) p(2) x at basis {x}"
                break
        rep.add("p-balances", detail is None, detail)

        contracted = {}
        for (i, j), c in p.items():
            for k, v in self.mul({i: c}, {j: one}).items():
                _acc(contracted, k, v)
        rep.add("p-contracts-to-unit", contracted == self.unit)

        sq = {}
        for (i, j), c in p.items():
            for (i2, j2), c2 in p.items():
                for k1, a in self.mu_pairs.get((i, i2), ()):
                    for k2, b in self.mu_pairs.get((j2, j), ()):
                        _acc(sq, (k1, k2), c * c2 * a * b)
        rep.add("p-idempotent-op", sq == p)
        return rep


def standard_frobenius(kind, nsize, conductor=1):
    """The diagonal algebra k^n or the matrix algebra M_n with canonical data."""
    n = conductor
    one = Cyclotomic.one(n)
    if kind == "diagonal":
        d = nsize
        mu_pairs = {(i, i): [(i, one)] for i in range(d)}
        unit = {i: one for i in range(d)}
        s_terms = {i: [(i, i, one)] for i in range(d)}
        delta = {i: one for i in range(d)}
        return SeparableFrobenius(d, n, mu_pairs, unit, s_terms, delta,
                                  name=f"k^{nsize}")
    if kind == "matrix":
        m = nsize
        d = m * m
        idx = lambda i, j: i * m + j
        mu_pairs = {}
        for i, j, k, l in itertools.product(range(m), repeat=4):
            if j == k:
                mu_pairs[(idx(i, j), idx(k, l))] = [(idx(i, l), one)]
        unit = {idx(i, i): one for i in range(m)}
        inv_m = Cyclotomic.rational(n, Fraction(1, m))
        s_terms = {}
        for k, l in itertools.product(range(m), repeat=2):
            # s(E_kl) = (1/m) sum_j E_kj (x) E_jl
            s_terms[idx(k, l)] = [(idx(k, j), idx(j, l), inv_m) for j in range(m)]
        delta = {idx(i, i): Cyclotomic.rational(n, m) for i in range(m)}
        return SeparableFrobenius(d, n, mu_pairs, unit, s_terms, delta,
                                  name=f"M_{m}")
    raise ValueError("kind must be 'diagonal' or 'matrix'")


def build_frobenius_double(B):
    """Weak Hopf algebra on B (x) B^op from a separable Frobenius B."""
    rep = B.validate()
    if not rep.ok:
        raise ValueError(f"invalid separable Frobenius input: {rep.first_failure.detail}")
    n = B.conductor
    db = B.dim
    labels = [("t", i, j) for i in range(db) for j in range(db)]
    index = {lab: k for k, lab in enumerate(labels)}
    d = len(labels)
    one = Cyclotomic.one(n)
    mu, delta = _new_tensors(d, n)

    for (i1, j1) in itertools.product(range(db), repeat=2):
        for (i2, j2) in itertools.product(range(db), repeat=2):
            left = index[("t", i1, j1)]
            right = index[("t", i2, j2)]
            for k1, c1 in B.mu_pairs.get((i1, i2), ()):
                for k2, c2 in B.mu_pairs.get((j2, j1), ()):
                    mu.add_to(left, right, index[("t", k1, k2)], c1 * c2)

    unit = {}
    for i, ci in B.unit.items():
        for j, cj in B.unit.items():
            unit[index[("t", i, j)]] = ci * cj

    p = B.p()
    for (i, j) in itertools.product(range(db), repeat=2):
        x = index[("t", i, j)]
        for (p1, p2), c in p.items():
            delta.add_to(x, index[("t", i, p1)], index[("t", p2, j)], c)

    counit = {}
    for (i, j) in itertools.product(range(db), repeat=2):
        val = B.delta_of(B.mul({i: one}, {j: one}))
        if val:
            counit[index[("t", i, j)]] = val

    # tau(a) = delta(a p(2)) p(1), the Nakayama automorphism of B
    tau = {}
    for i in range(db):
        img = {}
        for (p1, p2), c in p.items():
            val = B.delta_of(B.mul({i: one}, {p2: c}))
            if val:
                _acc(img, p1, val)
        tau[i] = img

    antipode = SparseMatrix(d, d, n)
    for (i, j) in itertools.product(range(db), repeat=2):
        x = index[("t", i, j)]
        for k, v in tau[i].items():
            antipode.add_to(index[("t", j, k)], x, v)

    return WeakHopfAlgebra(
        labels, n, mu, unit, delta, counit, antipode,
        name=f"{B.name} (x) {B.name}^op",
        meta={"builder": "frobenius-double", "base": B.name},
    )
