"""Checks on Desarguesian subspreads and secant subplanes."""

from __future__ import annotations

import itertools
import math

from ..abb import abb_affine, abb_inverse_affine, abb_map
from ..gf_tower import divisors
from ..linalg import coordinates, enumerate_subspaces, lincomb, mat_inv, mat_mul, normalize, rank, vec_mat
from ..projective import Subspace, h_infinity, meet, span
from ..spread import element_of_subspace, element_through, field_reduce, regulus_through, spread_element, spread_elements
from ..subobjects import (random_linfty_point, random_point, subline_through, subplane_from_vectors,
                          subplane_through)
from .common import base_witness, ej, elt_json, phi_affine, pj
from .line_checks import _pg1, _random_h_point, subline_count_pg1
from .report import UsageError


# -- T2.10 ------------------------------------------------------------------------------

def _graph_maps(ctx, S):
    """With W = E1 + E2 = H_infinity, E_j is the graph of f_j: E1 -> E2 (j >= 3)."""
    E1, E2 = S[0].subspace.rows, S[1].subspace.rows
    n = len(E1)
    basis = E1 + E2
    fs = []
    for E in S[2:]:
        xs, zs = [], []
        for y in E.subspace.rows:
            c = coordinates(y, basis, ctx)
            xs.append(c[:n])
            zs.append(c[n:])
        fs.append(mat_mul(mat_inv(xs, ctx), zs, ctx))
    return fs


def _to_vectors(ctx, rows, basis):
    return [lincomb(r, basis, ctx) for r in rows]


def _cond3_4(ctx, S, k):
    """Conditions (3) and (4): search the k-subspaces U of E1 invariant under f_j f_3^(-1).

    Any (2k-1)-space meeting E1, E2 in (k-1)-spaces is U + U f_3 and meets E_j in
    the graph of f_j over {x in U : x f_j f_3^(-1) in U}.
    """
    n = ctx.n
    fs = _graph_maps(ctx, S)
    f3 = fs[0]
    f3i = mat_inv(f3, ctx)
    gs = [mat_mul(f, f3i, ctx) for f in fs[1:]]
    E1, E2 = S[0].subspace.rows, S[1].subspace.rows
    c3 = c4 = False
    for U in enumerate_subspaces(ctx, n, k):
        if not all(rank(list(U) + [vec_mat(u, g, ctx) for u in U], ctx) == k for g in gs):
            continue
        c3 = True
        X1 = _to_vectors(ctx, U, E1)
        X2 = _to_vectors(ctx, [vec_mat(u, f3, ctx) for u in U], E2)
        pi = Subspace.from_vectors(ctx, X1 + X2)
        if all(element_of_subspace(ctx, meet(pi, E.subspace), k) is not None for E in S):
            c4 = True
            break
    return c3, c4


def _subline_cond(ctx, S, k):
    pts = [normalize((E.a, E.b), ctx) for E in S]
    m = subline_through(ctx, pts[0], pts[1], pts[2], k)
    return m.points == frozenset(pts), m


def _regulus_cond(ctx, S):
    subs = {E.subspace for E in S}
    for A, B, C in itertools.combinations(S, 3):
        if not all(R in subs for R in regulus_through(A.subspace, B.subspace, C.subspace)):
            return False
    return True


def _literal_1_to_4(ctx, m, S, k):
    """The subplane spanned by m and a tangent subline at a point of m; its image is a 2k-flat."""
    u, w = m.vectors
    one = ctx.one
    u3, w3 = (u[0], u[1], 0), (w[0], w[1], 0)
    mu = subplane_from_vectors(ctx, [u3, w3, (0, 0, one)], k)
    M = phi_affine(ctx, mu.points)
    F = span(*M, ctx=ctx)
    if len(M) != ctx.q ** (2 * k) or F.dim != 2 * k:
        return False
    pi = meet(F, h_infinity(ctx))
    if pi.dim != 2 * k - 1:
        return False
    subs = {E.subspace: E for E in S}
    met = 0
    for E in spread_elements(ctx, ctx.n):
        I = meet(pi, E.subspace)
        if not I.rows:
            continue
        met += 1
        if E.subspace not in subs or element_of_subspace(ctx, I, k) is None:
            return False
    return met == len(S)


def _evaluate_T2_10(ctx, S, k):
    c1, m = _subline_cond(ctx, S, k)
    c2 = _regulus_cond(ctx, S)
    c3, c4 = _cond3_4(ctx, S, k)
    lit = _literal_1_to_4(ctx, m, S, k) if c1 else None
    return c1, c2, c3, c4, lit


def check_T2_10(cp, ctx, tally, info):
    ks = [cp.k] if cp.k is not None else divisors(ctx.n)
    D = spread_elements(ctx, ctx.n)
    for k in ks:
        size = ctx.q**k + 1
        if cp.mode == "exhaustive":
            if math.comb(len(D), size) > 10000:
                raise UsageError("exhaustive T2.10 needs at most 10000 candidate sets")
            sets = itertools.combinations(D, size)
            info["route"] = "all (q^k+1)-subsets of D"
        else:
            sets = (_sample_set(ctx, D, k, cp.rng(i), i) for i in range(cp.samples))
            info["route"] = "sampled sublines of l_infinity, near misses and random sets"
        npos = 0
        for S in sets:
            S = list(S)
            c1, c2, c3, c4, lit = _evaluate_T2_10(ctx, S, k)
            npos += c1
            ok = c1 == c2 == c3 == c4 and lit in (None, True)
            tally.check(ok, lambda: base_witness(ctx, k=k, conditions=[c1, c2, c3, c4], literal=lit,
                                                 S=[elt_json(ctx, E) for E in S]))
        info.setdefault("positives", {})[str(k)] = npos
        if cp.mode == "exhaustive":
            tally.global_check(npos == subline_count_pg1(ctx, k), lambda: base_witness(ctx, k=k, positives=npos))


def _sample_set(ctx, D, k, rng, i):
    pts = _pg1(ctx)
    while True:
        a, b, c = rng.sample(pts, 3)
        m = subline_through(ctx, a, b, c, k)
        S = [spread_element(ctx, P[0], P[1], ctx.n) for P in sorted(m.points)]
        kind = i % 3
        if kind == 0 or len(S) == len(D):
            return S
        if kind == 1:
            # near miss: swap one element for an outside one
            outside = [E for E in D if E not in S]
            S[rng.randrange(len(S))] = rng.choice(outside)
            return S
        return rng.sample(D, len(S))


# -- C2.11 ------------------------------------------------------------------------------

def check_C2_11(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("C2.11 supports sample mode only")
    info["route"] = ("span of two D_k elements in distinct D elements meets each incident D element "
                     "in a D_k element (the (3) => (4) reduction); no enumeration of subspreads")
    ks = [cp.k] if cp.k is not None else divisors(ctx.n)
    D = spread_elements(ctx, ctx.n)
    for i in range(cp.samples):
        rng = cp.rng(i)
        for k in ks:
            while True:
                E1 = element_through(ctx, _random_h_point(ctx, rng), k)
                E2 = element_through(ctx, _random_h_point(ctx, rng), k)
                if not element_through(ctx, E1.subspace.rows[0], ctx.n).subspace.contains_subspace(E2.subspace):
                    break
            T = span(E1.subspace, E2.subspace)
            incident, good = 0, True
            for E in D:
                I = meet(T, E.subspace)
                if I.rows:
                    incident += 1
                    good &= element_of_subspace(ctx, I, k) is not None
            ok = T.dim == 2 * k - 1 and incident == ctx.q**k + 1 and good
            tally.check(ok, lambda: base_witness(ctx, k=k, E1=elt_json(ctx, E1), E2=elt_json(ctx, E2),
                                                 incident=incident))
        # r = 3: the field-reduced points of a line of PG(2, q^n) lie in the span of two of them
        if ctx.size ** 2 <= 4096:
            P1, P2 = random_point(ctx, rng), random_point(ctx, rng)
            if P1 != P2:
                A, B = field_reduce(ctx, P1, 3), field_reduce(ctx, P2, 3)
                T = span(A, B)
                line = Subspace.from_vectors(ctx, [P1, P2], ctx.n)
                ok = all(T.contains_subspace(field_reduce(ctx, P, 3)) for P in line.points())
                R = random_point(ctx, rng)
                if not line.contains(R):
                    ok &= not T.contains_subspace(field_reduce(ctx, R, 3))
                tally.check(ok, lambda: base_witness(ctx, r=3, P1=pj(ctx, P1), P2=pj(ctx, P2)))


# -- T3.1 ---------------------------------------------------------------------------------

def _trace_structure(ctx, F, k, D):
    """(ok, D elements met) for condition (ii) and the Moreover clause of a 2k-flat."""
    pi = meet(F, h_infinity(ctx))
    if pi.dim != 2 * k - 1:
        return False, []
    met = []
    for E in D:
        I = meet(pi, E.subspace)
        if I.rows:
            if I.dim != k - 1 or element_of_subspace(ctx, I, k) is None:
                return False, met
            met.append(E)
    return len(met) == ctx.q**k + 1, met


def _random_secant_subplane(ctx, rng, k):
    while True:
        X1, X2 = random_linfty_point(ctx, rng), random_linfty_point(ctx, rng)
        A, B = random_point(ctx, rng, affine=True), random_point(ctx, rng, affine=True)
        try:
            mu = subplane_through(ctx, X1, X2, A, B, k)
        except ValueError:
            continue
        if mu.tag == "secant":
            return mu


def check_T3_1(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("T3.1 supports sample mode only")
    info["route"] = "forward on sampled secant subplanes; converse by rebuilding the subplane from sampled flats"
    ks = [cp.k] if cp.k is not None else divisors(ctx.n)
    D = spread_elements(ctx, ctx.n)
    for i in range(cp.samples):
        rng = cp.rng(i)
        for k in ks:
            mu = _random_secant_subplane(ctx, rng, k)
            M = phi_affine(ctx, mu.points)
            F = span(*M, ctx=ctx)
            ok = len(M) == ctx.q ** (2 * k) and F.dim == 2 * k
            if ok:
                ok, met = _trace_structure(ctx, F, k, D)
                linf = {abb_map(ctx, P) for P in mu.points if P[2] == 0}
                ok &= set(met) == linf
            tally.check(ok, lambda: base_witness(ctx, k=k, subplane=mu.to_json()))
            # converse
            while True:
                E1 = element_through(ctx, _random_h_point(ctx, rng), k)
                E2 = element_through(ctx, _random_h_point(ctx, rng), k)
                if not element_through(ctx, E1.subspace.rows[0], ctx.n).subspace.contains_subspace(E2.subspace):
                    break
            A = abb_affine(ctx, random_point(ctx, rng, affine=True))
            F = span(E1.subspace, E2.subspace, A)
            ok, met = _trace_structure(ctx, F, k, D)
            if ok:
                ok = _rebuild_secant(ctx, F, met, k)
            tally.check(ok, lambda: base_witness(ctx, k=k, E1=elt_json(ctx, E1), E2=elt_json(ctx, E2),
                                                 A=[ej(ctx, x) for x in A]))


def _rebuild_secant(ctx, F, met, k):
    aff = [P for P in F.points() if P[-1] != 0]
    if len(aff) != ctx.q ** (2 * k):
        return False
    X1 = normalize((met[0].a, met[0].b, 0), ctx)
    X2 = normalize((met[1].a, met[1].b, 0), ctx)
    pre = [abb_inverse_affine(ctx, P) for P in aff]
    A = pre[0]
    for B in pre[1:]:
        try:
            mu = subplane_through(ctx, X1, X2, A, B, k)
        except ValueError:
            continue
        return phi_affine(ctx, mu.points) == frozenset(aff)
    return False
