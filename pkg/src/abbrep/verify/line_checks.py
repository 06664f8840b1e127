"""Checks about the stabiliser actions, sublines and their images."""

from __future__ import annotations

import itertools
import math

from ..abb import (abb_affine, abb_inverse_affine, abb_map, affine_plane_points, affine_rep, embed_iota,
                   iota_vector, random_stabiliser, sigma_apply, sigma_points, sigma_vec)
from ..curves import (extend_curve, extension_through, fit_nrc, indicator_intersection,
                      is_arc, is_conjugate_orbit, c_omega, no_three_collinear)
from ..gf_tower import divisors
from ..linalg import normalize, rank
from ..projective import Subspace, h_infinity, meet, span
from ..spread import (conjugate_points, element_of_subspace, element_through, indicator_set,
                      spread_element, spread_elements)
from ..subobjects import (random_linfty_point, random_point, reduce_to_canonical,
                          smallest_containing_degree, subline_canonical,
                          subline_through)
from .common import (base_witness, ej, elt_json, phi_affine, pj,
                     proper_divisors, random_external_subline, sj, transport_curve,
                     transport_subline)
from .report import UsageError


def _k_values(cp, ctx, allowed):
    ks = [cp.k] if cp.k is not None else [d for d in divisors(ctx.n) if allowed(d)]
    return ks


def _sample_indices(cp, ctx, n_all, rng):
    return range(n_all) if cp.mode == "exhaustive" else sorted(rng.sample(range(n_all), min(n_all, 200)))


# -- L1.1 -----------------------------------------------------------------------------

def check_L1_1(cp, ctx, tally, info):
    aff = affine_plane_points(ctx)
    linf = [(0, ctx.one, 0)] + [(ctx.one, b, 0) for b in range(ctx.size)]
    sig = sigma_points(ctx) if cp.mode == "exhaustive" else None
    ks = divisors(ctx.n)
    ind = {k: indicator_set(ctx, k) for k in ks}
    H = h_infinity(ctx)
    elems = {}
    for k in ks:
        if k > 1 or (ctx.q ** (2 * ctx.n) - 1) // (ctx.q - 1) <= 2000:
            elems[k] = spread_elements(ctx, k)
    for i in range(cp.samples):
        rng = cp.rng(i)
        X = random_stabiliser(ctx, rng)
        wit = lambda **kw: base_witness(ctx, X=X.to_json(), **kw)  # noqa: E731
        if cp.mode == "exhaustive":
            pts, lpts, spts = aff, linf, sig
        else:
            pts = [random_point(ctx, rng, affine=True) for _ in range(50)]
            lpts = [random_linfty_point(ctx, rng) for _ in range(10)]
            spts = [normalize(random_point_sigma(ctx, rng), ctx) for _ in range(50)]
        for P in pts:
            lhs = normalize(abb_affine(ctx, X.chi0(P)), ctx)
            rhs = X.chi(abb_affine(ctx, P))
            tally.check(lhs == rhs, lambda: wit(diagram="phi chi0 = chi phi", point=pj(ctx, P)))
        for P in lpts:
            ok = abb_map(ctx, X.chi0(P)).subspace == X.chi_subspace(abb_map(ctx, P).subspace)
            tally.check(ok, lambda: wit(diagram="phi chi0 = chi phi", point=pj(ctx, P)))
        for v in spts:
            lhs = normalize(iota_vector(ctx, X.chi_vector(v)), ctx)
            rhs = X.chi_star(iota_vector(ctx, v))
            tally.check(lhs == rhs, lambda: wit(diagram="iota chi = chi* iota", point=sj(ctx, v)))
        for k in ks:
            pool = elems.get(k)
            if pool is None or cp.mode != "exhaustive":
                chosen = [element_through(ctx, _random_h_point(ctx, rng), k) for _ in range(10)]
            else:
                chosen = pool
            for E in chosen:
                img = X.chi_subspace(E.subspace)
                tally.check(element_of_subspace(ctx, img, k) is not None,
                            lambda: wit(property="chi stabilises D_k", element=elt_json(ctx, E)))
            for j, L in enumerate(ind[k].flats):
                tally.check(X.chi_star_subspace(L) == L,
                            lambda: wit(property="chi* stabilises indicator flats", k=k, flat=j))
            # k-flats through a D_k element go to k-flats through a D_k element
            E = element_through(ctx, _random_h_point(ctx, rng), k)
            A = abb_affine(ctx, random_point(ctx, rng, affine=True))
            img = X.chi_subspace(span(E.subspace, A))
            tr = meet(img, H)
            tally.check(img.dim == k and element_of_subspace(ctx, tr, k) is not None,
                        lambda: wit(property="chi maps k-flats on D_k to k-flats on D_k",
                                    element=elt_json(ctx, E), point=sj(ctx, A)))
        for _ in range(10):
            v = tuple(rng.randrange(ctx.size) for _ in range(2 * ctx.n + 1))
            if not any(v):
                continue
            lhs = normalize(X.chi_star_vector(sigma_vec(ctx, v)), ctx)
            rhs = sigma_apply(ctx, X.chi_star_vector(v))
            tally.check(lhs == rhs, lambda: wit(property="chi* commutes with sigma",
                                                vector=[ej(ctx, x) for x in v]))


def random_point_sigma(ctx, rng):
    sub = ctx.subfield(1)
    while True:
        v = tuple(rng.choice(sub) for _ in range(2 * ctx.n + 1))
        if any(v):
            return v


def _random_h_point(ctx, rng):
    v = random_point_sigma(ctx, rng)
    return v[:-1] + (0,) if any(v[:-1]) else _random_h_point(ctx, rng)


# -- L2.1 ---------------------------------------------------------------------------

def check_L2_1(cp, ctx, tally, info):
    one = ctx.one
    omegas = range(ctx.size) if cp.mode == "exhaustive" else \
        [cp.rng(i).randrange(ctx.size) for i in range(cp.samples)]
    for om in omegas:
        k0 = ctx.subfield_degree(om)
        base = subline_canonical(ctx, om, 1).points
        ok, tangent_levels = True, []
        for d in divisors(ctx.n):
            l = subline_canonical(ctx, om, d)
            oracle = subline_through(ctx, (0, one, om), (0, 0, one),
                                     normalize((0, one, ctx.add(om, one)), ctx), d)
            ok &= l.points == oracle.points and base <= l.points
            tangent = l.tag == "tangent"
            ok &= tangent == (d % k0 == 0)
            if tangent:
                tangent_levels.append(d)
        ok &= bool(tangent_levels) and min(tangent_levels) == k0
        tally.check(ok, lambda: base_witness(ctx, omega=ej(ctx, om)))


# -- L2.2 ---------------------------------------------------------------------------

def _random_subline(ctx, rng, level):
    while True:
        P1 = random_point(ctx, rng)
        P2 = random_point(ctx, rng)
        if P1 == P2:
            continue
        c = rng.randrange(1, ctx.size)
        P3 = normalize(tuple(ctx.add(x, ctx.mul(c, y)) for x, y in zip(P1, P2)), ctx)
        if P3 in (P1, P2):
            continue
        m = subline_through(ctx, P1, P2, P3, level)
        if m.tag != "contained":
            return m


def _smallest_tangent_oracle(m):
    """Search the divisor lattice directly for the smallest tangent subline containing m."""
    ctx = m.ctx
    P1, P2, P3 = sorted(m.points)[:3]
    for d in divisors(ctx.n):
        if d % m.level:
            continue
        big = subline_through(ctx, P1, P2, P3, d)
        if big.tag == "tangent" and m.points <= big.points:
            return d
    return None


def check_L2_2(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("L2.2 supports sample mode only")
    levels = _k_values(cp, ctx, lambda d: True)
    for i in range(cp.samples):
        rng = cp.rng(i)
        for k in levels:
            m = _random_subline(ctx, rng, k)
            X, can = reduce_to_canonical(m)
            om = can.vectors[0][2]
            back = transport_subline(X, can)
            ok = back == m and can.tag == m.tag
            ok &= (om == 0) if m.tag == "tangent" else not ctx.in_subfield(om, k)
            ok &= X.matrix[0][2] == 0 and X.matrix[1][2] == 0 and X.matrix[2][2] == ctx.one
            ok &= smallest_containing_degree(m) == _smallest_tangent_oracle(m)
            tally.check(ok, lambda: base_witness(ctx, level=k, subline=m.to_json()))


# -- T2.3 -----------------------------------------------------------------------------

def _tangent_sublines(ctx, k):
    """Every tangent F_(q^k)-subline, as (direction vector, affine point set).

    The direction vector fixes the coset A + F_(q^k) e, so it is kept unnormalised.
    """
    M = (ctx.size - 1) // (ctx.q**k - 1)
    lam_reps = [ctx.exp_table[i] for i in range(M)]
    sub = ctx.subfield(k)
    dirs = [(0, ctx.one)] + [(ctx.one, b) for b in range(ctx.size)]
    out = []
    for d1, d2 in dirs:
        for lam in lam_reps:
            e1, e2 = ctx.mul(lam, d1), ctx.mul(lam, d2)
            seen = set()
            for a in range(ctx.size):
                for b in range(ctx.size):
                    if (a, b) in seen:
                        continue
                    pts = []
                    for t in sub:
                        pt = (ctx.add(a, ctx.mul(t, e1)), ctx.add(b, ctx.mul(t, e2)))
                        seen.add(pt)
                        pts.append(pt + (ctx.one,))
                    out.append(((e1, e2, 0), frozenset(pts)))
    return out


def tangent_flats(ctx, k):
    """Every k-flat of Sigma meeting H_infinity in a D_k element."""
    flats = set()
    for E in spread_elements(ctx, k):
        for a in range(ctx.size):
            for b in range(ctx.size):
                flats.add(span(E.subspace, abb_affine(ctx, (a, b, ctx.one))))
    return flats


def tangent_subline_count(ctx, k):
    Q, s = ctx.size, ctx.q**k
    return Q * Q * (Q * Q - 1) // (s * (s - 1))


def _tangent_image_ok(ctx, k, direction, pts):
    H = h_infinity(ctx)
    M = phi_affine(ctx, pts)
    S = span(*M, ctx=ctx)
    tr = meet(S, H)
    E = element_of_subspace(ctx, tr, k)
    ok = len(M) == ctx.q**k and S.dim == k and E is not None
    return ok and E == spread_element(ctx, direction[0], direction[1], k), S


def check_T2_3(cp, ctx, tally, info):
    ks = _k_values(cp, ctx, lambda d: True)
    if cp.mode == "exhaustive":
        info["route"] = "forward on every tangent subline; converse by counting k-flats on D_k elements"
        counts = {}
        for k in ks:
            lines = _tangent_sublines(ctx, k)
            flats = tangent_flats(ctx, k)
            images = set()
            for direction, pts in lines:
                ok, S = _tangent_image_ok(ctx, k, direction, pts)
                images.add(S)
                tally.check(ok and S in flats, lambda: base_witness(
                    ctx, k=k, direction=pj(ctx, direction), points=[pj(ctx, P) for P in sorted(pts)]))
            formula = tangent_subline_count(ctx, k)
            counts[str(k)] = {"sublines": len(lines), "flats": len(flats), "formula": formula}
            tally.global_check(len(lines) == len(flats) == formula and images == flats,
                               lambda: base_witness(ctx, k=k, **counts[str(k)]))
        info["counts"] = counts
        return
    info["route"] = "forward on sampled tangent sublines; constructive converse from sampled flats"
    for i in range(cp.samples):
        rng = cp.rng(i)
        for k in ks:
            d = random_linfty_point(ctx, rng)
            A = affine_rep(ctx, random_point(ctx, rng, affine=True))
            lam = rng.randrange(1, ctx.size)
            pts = frozenset(normalize(tuple(ctx.add(x, ctx.mul(ctx.mul(lam, t), y)) for x, y in zip(A, d)), ctx)
                            for t in ctx.subfield(k))
            ok, _ = _tangent_image_ok(ctx, k, tuple(ctx.mul(lam, x) for x in d), pts)
            tally.check(ok, lambda: base_witness(ctx, k=k, direction=pj(ctx, d),
                                                 points=[pj(ctx, P) for P in sorted(pts)]))
            # converse: rebuild the subline from a random flat on a D_k element
            E = element_through(ctx, _random_h_point(ctx, rng), k)
            B = abb_affine(ctx, random_point(ctx, rng, affine=True))
            F = span(E.subspace, B)
            aff = [P for P in F.points() if P[-1] != 0]
            pre = [abb_inverse_affine(ctx, P) for P in aff]
            direction = (E.a, E.b, 0)
            ok = len(aff) == ctx.q**k
            if ok and len(pre) >= 2:
                m = subline_through(ctx, normalize(direction, ctx), pre[0], pre[1], k)
                ok = m.tag == "tangent" and phi_affine(ctx, m.points) == frozenset(aff)
            tally.check(ok, lambda: base_witness(ctx, k=k, element=elt_json(ctx, E), point=sj(ctx, B)))


# -- L2.5 --------------------------------------------------------------------------

def check_L2_5(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("L2.5 supports sample mode only")
    n = ctx.n
    props = [d for d in proper_divisors(n) if d >= 2]
    controls = ctx.q >= n
    info["route"] = "general-position failure for every m != min S" + (
        "; general position at min S as control" if controls else "")
    for i in range(cp.samples):
        rng = cp.rng(i)
        # half the lines sit inside a smaller D_d element, half are arbitrary lines of a D element
        if props and i % 2 == 0:
            d = rng.choice(props)
            Ed = element_through(ctx, _random_h_point(ctx, rng), d)
            rows = _random_line_in(ctx, Ed.subspace, rng)
        else:
            E = element_through(ctx, _random_h_point(ctx, rng), n)
            rows = _random_line_in(ctx, E.subspace, rng)
        l = Subspace.from_vectors(ctx, rows)
        S = [m for m in divisors(n) if element_through(ctx, l.rows[0], m).subspace.contains_subspace(l)]
        A = abb_affine(ctx, random_point(ctx, rng, affine=True))
        x, y = rows
        B = tuple(ctx.add(a, b) for a, b in zip(A, x))
        C = tuple(ctx.add(a, b) for a, b in zip(A, y))
        base = [embed_iota(ctx, v) for v in (A, B, C)]
        for m in S:
            Em = element_through(ctx, l.rows[0], m)
            pts = base + conjugate_points(ctx, Em)
            gp = is_arc(ctx, pts, m) and rank(pts, ctx) == m + 1
            if m == min(S):
                if not controls:
                    continue
                ok = gp
            else:
                ok = not gp
            tally.check(ok, lambda: base_witness(ctx, m=m, S=S, line=[sj(ctx, r) for r in rows],
                                                 A=sj(ctx, A)))


def _random_line_in(ctx, V: Subspace, rng):
    sub = ctx.subfield(1)
    while True:
        vs = [tuple(ctx.sum(ctx.mul(c, r[j]) for c, r in zip(cs, V.rows)) for j in range(V.length))
              for cs in ([rng.choice(sub) for _ in V.rows] for _ in range(2))]
        if rank(vs, ctx) == 2:
            return [normalize(v, ctx) for v in vs]


# -- T2.6 ------------------------------------------------------------------------------

def _external_structure(ctx, m):
    """Every forward claim for one external F_q-subline; returns a list of failure labels."""
    bad = []
    X, can = reduce_to_canonical(m)
    om = can.vectors[0][2]
    k = smallest_containing_degree(m)
    if k != ctx.subfield_degree(om):
        bad.append("degree")
    if _smallest_tangent_oracle(m) != k:
        bad.append("moreover")
    M = phi_affine(ctx, m.points)
    if len(M) != ctx.q + 1:
        bad.append("image size")
    C = fit_nrc(ctx, M)
    if C is None or C.degree != k:
        bad.append("nrc fit")
    S = span(*M, ctx=ctx)
    E1 = element_of_subspace(ctx, meet(S, h_infinity(ctx)), k)
    if S.dim != k or E1 is None:
        bad.append("span")
        return bad
    T = transport_curve(X, c_omega(ctx, om))
    if T.point_set() != M:
        bad.append("transport")
    Cs = extend_curve(T)
    hits = indicator_intersection(Cs, k)
    pts = [P for P, _ in hits]
    if len(hits) != k or sorted(j for _, j in hits if j is not None) != list(range(k)):
        bad.append("indicator count")
    elif not is_conjugate_orbit(ctx, pts) or set(pts) != set(conjugate_points(ctx, E1)):
        bad.append("conjugate orbit")
    if C is not None:
        alt = extension_through(ctx, C, conjugate_points(ctx, E1))
        if alt is None or alt != Cs:
            bad.append("extension")
    return bad


def check_T2_6(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("T2.6 supports sample mode only; the converse runs as a census")
    if cp.k == 1:
        from .report import HypothesisError
        raise HypothesisError("external F_q-sublines have degree k > 1")
    for i in range(cp.samples):
        rng = cp.rng(i)
        m, X, om = random_external_subline(ctx, rng, 1, cp.k)
        bad = _external_structure(ctx, m)
        tally.check(not bad, lambda: base_witness(ctx, failures=bad, X=X.to_json(), omega=ej(ctx, om)))
    if ctx.size <= 81:
        from .census import census
        res = census("external-triples", ctx)
        info["converse"] = {"census": "external-triples", "computed": res.computed, "formula": res.formula}
        tally.global_check(res.passed, lambda: base_witness(ctx, census=res.to_json()))
    else:
        info["converse"] = "census skipped: field too large for triple enumeration"


# -- C2.7 ----------------------------------------------------------------------------

def check_C2_7(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("C2.7 supports sample mode only")
    levels = [cp.k] if cp.k is not None else proper_divisors(ctx.n)
    if any(k >= ctx.n for k in levels):
        from .report import HypothesisError
        raise HypothesisError("external F_(q^k)-sublines need k < n")
    H = h_infinity(ctx)
    for i in range(cp.samples):
        rng = cp.rng(i)
        for k in levels:
            m, X, om = random_external_subline(ctx, rng, k)
            r = smallest_containing_degree(m)
            bad = []
            M = phi_affine(ctx, m.points)
            if len(M) != ctx.q**k + 1 or len(m.points) != len(M):
                bad.append("size")
            if not no_three_collinear(ctx, M):
                bad.append("collinear")
            S = span(*M, ctx=ctx)
            if S.dim != r or element_of_subspace(ctx, meet(S, H), r) is None:
                bad.append("span")
            pts = sorted(m.points)
            triples = list(itertools.combinations(pts, 3))
            if len(triples) > 60:
                triples = rng.sample(triples, 60)
            for t in triples:
                m0 = subline_through(ctx, *t, 1)
                C = phi_affine(ctx, m0.points)
                fit = fit_nrc(ctx, C)
                if not (m0.points <= m.points and fit is not None
                        and fit.degree == smallest_containing_degree(m0)):
                    bad.append("triple")
                    break
            tally.check(not bad, lambda: base_witness(ctx, level=k, failures=bad, X=X.to_json(),
                                                      omega=ej(ctx, om)))


# -- R2.8 ---------------------------------------------------------------------------

def _pg1(ctx):
    return [(0, ctx.one)] + [(ctx.one, t) for t in range(ctx.size)]


def subline_count_pg1(ctx, k):
    Q, s = ctx.size, ctx.q**k
    return Q * (Q * Q - 1) // (s * (s * s - 1))


class _TripleCache:
    def __init__(self, ctx):
        self.ctx = ctx
        self.pts = _pg1(ctx)
        self.idx = {P: i for i, P in enumerate(self.pts)}
        self.cache = {}

    def mask(self, a, b, c):
        key = tuple(sorted((a, b, c)))
        v = self.cache.get(key)
        if v is None:
            m = subline_through(self.ctx, *(self.pts[x] for x in key), 1)
            v = sum(1 << self.idx[P] for P in m.points)
            self.cache[key] = v
        return v


def _bits(mask):
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def closure(tc: _TripleCache, mask: int) -> int:
    """Smallest superset closed under taking F_q-sublines of triples."""
    done = set()
    while True:
        grown = mask
        members = _bits(mask)
        for t in itertools.combinations(members, 3):
            if t in done:
                continue
            done.add(t)
            grown |= tc.mask(*t)
        if grown == mask:
            return mask
        mask = grown


def check_R2_8(cp, ctx, tally, info):
    tc = _TripleCache(ctx)
    N = len(tc.pts)
    all_sub = set()
    by_level = {}
    for k in divisors(ctx.n):
        found = set()
        for a, b, c in itertools.combinations(range(N), 3):
            m = subline_through(ctx, tc.pts[a], tc.pts[b], tc.pts[c], k)
            found.add(sum(1 << tc.idx[P] for P in m.points))
        by_level[k] = found
        all_sub |= found
    counts = {str(k): [len(v), subline_count_pg1(ctx, k)] for k, v in by_level.items()}
    info["subline_counts"] = counts
    tally.global_check(all(a == b for a, b in counts.values()), lambda: base_witness(ctx, counts=counts))
    if cp.mode == "exhaustive":
        if N > 17:
            raise UsageError("exhaustive R2.8 needs q^n + 1 <= 17")
        info["route"] = "every subset of PG(1, q^n) of size >= 3: closed iff a subline"
        closed_count = 0
        for mask in range(1 << N):
            members = _bits(mask)
            if len(members) < 3:
                continue
            closed = True
            for t in itertools.combinations(members, 3):
                if tc.mask(*t) & ~mask:
                    closed = False
                    break
            closed_count += closed
            tally.check(closed == (mask in all_sub),
                        lambda: base_witness(ctx, subset=[pj(ctx, tc.pts[j]) for j in members]))
        info["closed_sets"] = closed_count
        return
    if N > 82:
        raise UsageError("sampled R2.8 needs q^n <= 81")
    info["route"] = "closures of random seed sets are sublines"
    for i in range(cp.samples):
        rng = cp.rng(i)
        seed = rng.sample(range(N), rng.choice((3, 4, 5)))
        mask = closure(tc, sum(1 << j for j in seed))
        tally.check(mask in all_sub, lambda: base_witness(ctx, seed=[pj(ctx, tc.pts[j]) for j in seed]))


# -- C2.9 --------------------------------------------------------------------------------

def _cor29_conditions(ctx, M, r, H):
    """(i) and (ii) for a point set M of Sigma with r = its span dimension."""
    S = span(*M, ctx=ctx)
    if S.dim != r:
        return False
    E = element_of_subspace(ctx, meet(S, H), r)
    if E is None:
        return False
    C = fit_nrc(ctx, M)
    if C is None or C.degree != r:
        return False
    ext = extension_through(ctx, C, conjugate_points(ctx, E))
    return ext is not None


def _forward_29(ctx, m, H, rng, max_triples=20):
    r = smallest_containing_degree(m)
    M = phi_affine(ctx, m.points)
    S = span(*M, ctx=ctx)
    E = element_of_subspace(ctx, meet(S, H), r)
    if S.dim != r or E is None:
        return ["(i)"]
    cps = conjugate_points(ctx, E)
    triples = list(itertools.combinations(sorted(m.points), 3))
    if len(triples) > max_triples:
        triples = rng.sample(triples, max_triples)
    for t in triples:
        m0 = subline_through(ctx, *t, 1)
        C = fit_nrc(ctx, phi_affine(ctx, m0.points))
        if C is None or C.degree != r or not C.point_set() <= M:
            return ["(ii) curve"]
        if extension_through(ctx, C, cps) is None:
            return ["(ii) extension"]
    return []


def check_C2_9(cp, ctx, tally, info):
    H = h_infinity(ctx)
    one = ctx.one
    if cp.mode == "exhaustive":
        # every external F_q-subline of the line a = 0, then the converse over all
        # (q+1)-subsets of the affine points of its image n-space
        if math.comb(ctx.size, ctx.q + 1) > 30000:
            raise UsageError("exhaustive C2.9 needs C(q^n, q+1) <= 30000")
        info["route"] = "forward on every external F_q-subline of a fixed line; converse over all (q+1)-subsets"
        line_pts = [(0, b, one) for b in range(ctx.size)]
        rng = cp.rng(0)
        images = set()
        for t in itertools.combinations(range(ctx.size), 3):
            m = subline_through(ctx, *(line_pts[j] for j in t), 1)
            if m.tag != "external":
                continue
            key = phi_affine(ctx, m.points)
            if key in images:
                continue
            images.add(key)
            bad = _forward_29(ctx, m, H, rng)
            tally.check(not bad, lambda: base_witness(ctx, failures=bad, subline=m.to_json()))
        aff = [normalize(abb_affine(ctx, (0, b, one)), ctx) for b in range(ctx.size)]
        found = set()
        for sub in itertools.combinations(aff, ctx.q + 1):
            r = rank(sub, ctx) - 1
            if r < 2 or ctx.n % r:
                continue
            if _cor29_conditions(ctx, sub, r, H):
                found.add(frozenset(sub))
        info["converse"] = {"satisfying_sets": len(found), "external_sublines": len(images)}
        tally.global_check(found == images, lambda: base_witness(ctx, **info["converse"]))
        return
    info["route"] = "forward on sampled external sublines"
    for i in range(cp.samples):
        rng = cp.rng(i)
        for k in ([cp.k] if cp.k is not None else proper_divisors(ctx.n)):
            m, X, om = random_external_subline(ctx, rng, k)
            bad = _forward_29(ctx, m, H, rng)
            tally.check(not bad, lambda: base_witness(ctx, level=k, failures=bad, X=X.to_json(),
                                                      omega=ej(ctx, om)))
