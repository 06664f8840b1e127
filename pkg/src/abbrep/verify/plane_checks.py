"""Checks on subplanes, scrolls and the curves C_omega, N_omega."""

from __future__ import annotations

import itertools

from ..abb import abb_affine, sigma_apply
from ..curves import (Curve, apply_psi, c_omega, extend_curve, extension_through, fit_nrc,
                      fq_independent, indicator_intersection, is_conjugate_orbit, n_omega, pgl2,
                      scroll_build, veronese_points, veronese_projection, veronese_vectors)
from ..gf_tower import divisors
from ..linalg import normalize
from ..projective import h_infinity, meet, span
from ..spread import conjugate_points, element_of_subspace, element_through, indicator_set, transversal_lines
from ..subobjects import (SubobjectError, random_linfty_point, random_point, reduce_to_canonical,
                          smallest_containing_degree, subline_from_vectors, subplane_canonical,
                          subplane_through, _span_vectors)
from .common import (base_witness, ej, elements_of_degree, elements_outside, phi_affine, pj,
                     proper_divisors, random_tangent_subplane, transport_curve, transport_subplane)
from .report import HypothesisError, UsageError


# -- L3.2 ----------------------------------------------------------------------------

def _random_subplane(ctx, rng, kind):
    """Random F_q-subplane of the requested position, by rejection on four random points."""
    n_inf = {"external": 0, "tangent": 1, "secant": 2}[kind]
    for _ in range(10000):
        pts = [random_linfty_point(ctx, rng) for _ in range(n_inf)]
        pts += [random_point(ctx, rng, affine=True) for _ in range(4 - n_inf)]
        try:
            mu = subplane_through(ctx, *pts, 1)
        except SubobjectError:
            continue
        if mu.tag == kind:
            return mu
    raise RuntimeError(f"no {kind} subplane found")


def check_L3_2(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("L3.2 supports sample mode only")
    kinds = ["tangent", "secant"] + (["external"] if ctx.n >= 3 else [])
    for i in range(cp.samples):
        rng = cp.rng(i)
        for kind in kinds:
            mu = _random_subplane(ctx, rng, kind)
            X, can = reduce_to_canonical(mu)
            lam, om = can.vectors[0][2], can.vectors[1][2]
            ok = transport_subplane(X, can) == mu and can.tag == kind
            if kind == "external":
                ok &= fq_independent(ctx, [ctx.one, om, lam])
            elif kind == "tangent":
                ok &= lam == 0 and not ctx.in_subfield(om, 1)
            else:
                ok &= ctx.in_subfield(om, 1) and ctx.in_subfield(lam, 1)
            tally.check(ok, lambda: base_witness(ctx, kind=kind, subplane=mu.to_json()))


# -- L3.3 --------------------------------------------------------------------------

def check_L3_3(cp, ctx, tally, info):
    one = ctx.one
    pool = elements_outside(ctx, 1)
    omegas = pool if cp.mode == "exhaustive" else [cp.rng(i).choice(pool) for i in range(cp.samples)]
    for om in omegas:
        k = ctx.subfield_degree(om)
        base = subplane_canonical(ctx, om, 0, 1)
        ok = smallest_containing_degree(base) == k
        secant_levels = []
        for d in divisors(ctx.n):
            mu = subplane_canonical(ctx, om, 0, d)
            oracle = subplane_through(ctx, (one, 0, 0), (0, one, om), (0, 0, one),
                                      normalize((one, one, ctx.add(om, one)), ctx), d)
            ok &= mu.points == oracle.points and base.points <= mu.points
            secant = mu.tag == "secant"
            ok &= secant == (d % k == 0)
            if secant:
                secant_levels.append(d)
        ok &= bool(secant_levels) and min(secant_levels) == k
        tally.check(ok, lambda: base_witness(ctx, omega=ej(ctx, om)))


# -- L3.4 ----------------------------------------------------------------------------

def _standard_curves(ctx):
    """Two normal rational curves of Sigma on disjoint sets of unit vectors."""
    L = 2 * ctx.n + 1
    k1, k2 = min(ctx.q, ctx.n), min(ctx.q, ctx.n - 1)

    def unit(i):
        return tuple(ctx.one if j == i else 0 for j in range(L))

    C1 = Curve(ctx, tuple(unit(i) for i in range(k1 + 1)))
    C2 = Curve(ctx, tuple(unit(k1 + 1 + i) for i in range(k2 + 1)))
    return C1, C2


def check_L3_4(cp, ctx, tally, info):
    if ctx.n < 3:
        raise HypothesisError("L3.4 needs a point off the F_(q^2)-extension, so n >= 3")
    C1, C2 = _standard_curves(ctx)
    E1, E2 = extend_curve(C1), extend_curve(C2)
    G = pgl2(ctx)
    full = ctx.q * (ctx.q**2 - 1)
    xs = [(ctx.one, t) for t in range(ctx.size) if ctx.subfield_degree(t) > 2]
    ys = [(ctx.one, t) for t in range(ctx.size) if not ctx.in_subfield(t, 1)]
    info["curves"] = {"C1": C1.degree, "C2": C2.degree}
    if cp.mode == "exhaustive":
        pairs_x = xs
    else:
        pairs_x = [cp.rng(i).choice(xs) for i in range(cp.samples)]
    for i, x in enumerate(pairs_x):
        orbit = {}
        for psi in G:
            orbit.setdefault(apply_psi(ctx, psi, x), []).append(psi)
        tally.check(len(orbit) == full, lambda: base_witness(ctx, x=pj(ctx, x), orbit=len(orbit)))
        targets = ys if cp.mode == "exhaustive" else cp.rng(("y", i)).sample(ys, min(len(ys), 20))
        for y in targets:
            matches = orbit.get(normalize(y, ctx), [])
            ok = len(matches) <= 1
            if matches:
                ok &= _conjugate_lines_ok(ctx, E1, E2, matches[0], x, y)
            tally.check(ok, lambda: base_witness(ctx, x=pj(ctx, x), y=pj(ctx, y), matches=len(matches)))


def _conjugate_lines_ok(ctx, E1, E2, psi, x, y):
    P, Q = E1.point_at(*x), E2.point_at(*y)
    for i in range(ctx.n):
        xi = tuple(ctx.frob(c, i) for c in x)
        if E1.point_at(*xi) != sigma_apply(ctx, P, i):
            return False
        if E2.point_at(*apply_psi(ctx, psi, xi)) != sigma_apply(ctx, Q, i):
            return False
    return True


# -- T3.5 ---------------------------------------------------------------------------

def _tangent_structure(ctx, mu):
    """Forward claims (S1)-(S3) and the Moreover clause for one tangent F_q-subplane."""
    bad = []
    X, can = reduce_to_canonical(mu)
    om = can.vectors[1][2]
    k = ctx.subfield_degree(om)
    if smallest_containing_degree(mu) != k:
        bad.append("degree")
    levels = [d for d in divisors(ctx.n) if subplane_through_vectors(ctx, mu, d).tag == "secant"]
    if not levels or min(levels) != k:
        bad.append("moreover")
    W = phi_affine(ctx, mu.points)
    C = transport_curve(X, c_omega(ctx, om))
    N = transport_curve(X, n_omega(ctx, om))
    B = scroll_build(C, N, ((ctx.one, 0), (0, ctx.one)))
    if B.affine_points() != W:
        bad.append("scroll points")
    H = h_infinity(ctx)
    # (S1)
    fit = fit_nrc(ctx, C.point_set())
    S1 = span(*C.points(), ctx=ctx)
    E1 = element_of_subspace(ctx, meet(S1, H), k)
    Cs = extend_curve(C)
    if fit is None or fit.degree != k or S1.dim != k or E1 is None:
        bad.append("S1 curve")
        return bad
    P = conjugate_points(ctx, E1)
    if not set(P) <= Cs.point_set():
        bad.append("S1 conjugates")
    alt = extension_through(ctx, C, P)
    if alt is None or alt != Cs:
        bad.append("S1 extension")
    # (S2)
    Npts = N.point_set()
    SN = span(*Npts, ctx=ctx)
    E2 = element_of_subspace(ctx, SN, k)
    if E2 is None or SN.dim != k - 1:
        bad.append("S2 span")
        return bad
    if k > 1 and (fit_nrc(ctx, Npts) is None or fit_nrc(ctx, Npts).degree != k - 1):
        bad.append("S2 curve")
    if element_through(ctx, E1.subspace.rows[0], ctx.n) == element_through(ctx, E2.subspace.rows[0], ctx.n):
        bad.append("S2 same D element")
    Ns = extend_curve(N)
    Q = conjugate_points(ctx, E2)
    if not set(Q) <= Ns.point_set():
        bad.append("S2 conjugates")
    # (S3): the scroll's extension joins P_j and Q_j in the same indicator flat
    ind = indicator_set(ctx, k)
    for j in range(k):
        x = Cs.param_of(P[j])
        if x is None or Ns.point_at(*x) != Q[j]:
            bad.append("S3 line")
            break
        L = B.extension().line_at(x)
        if not (L.contains(P[j]) and L.contains(Q[j]) and ind.flats[j].contains_subspace(L)):
            bad.append("S3 flat")
            break
    return bad


def subplane_through_vectors(ctx, mu, d):
    from ..subobjects import subplane_from_vectors

    return subplane_from_vectors(ctx, mu.vectors, d)


def check_T3_5(cp, ctx, tally, info):
    if cp.mode == "exhaustive":
        raise UsageError("T3.5 supports sample mode only; the converse runs as censuses")
    if cp.k == 1:
        raise HypothesisError("tangent F_q-subplanes have k > 1")
    for i in range(cp.samples):
        rng = cp.rng(i)
        mu, X, om = random_tangent_subplane(ctx, rng, cp.k)
        bad = _tangent_structure(ctx, mu)
        tally.check(not bad, lambda: base_witness(ctx, failures=bad, X=X.to_json(), omega=ej(ctx, om)))
    from .census import census, census_feasible

    conv = {}
    for kind in ("scroll-curves", "allowable-B", "tangent-per-subline"):
        if not census_feasible(kind, ctx):
            conv[kind] = "skipped"
            continue
        res = census(kind, ctx)
        conv[kind] = [res.computed, res.formula]
        tally.global_check(res.passed, lambda: base_witness(ctx, census=res.to_json()))
    info["converse"] = conv


# -- R2 -------------------------------------------------------------------------------

def check_R2(cp, ctx, tally, info):
    ks = [cp.k] if cp.k is not None else [d for d in proper_divisors(ctx.n) if d > 1]
    if not ks or any(k in (1, ctx.n) for k in ks):
        raise HypothesisError("R2 needs 1 < k < n with k | n")
    nus = transversal_lines(ctx)
    exhibits = []
    for k in ks:
        pool = elements_of_degree(ctx, k)
        omegas = pool if cp.mode == "exhaustive" else [cp.rng((k, i)).choice(pool) for i in range(cp.samples)]
        for om in omegas:
            Cs = extend_curve(c_omega(ctx, om))
            hits = indicator_intersection(Cs, k)
            pts = [P for P, _ in hits]
            ok = len(hits) == k and sorted(j for _, j in hits if j is not None) == list(range(k))
            ok &= is_conjugate_orbit(ctx, pts)
            on_nu = [sum(1 for P in Cs.points() if nu.contains(P)) for nu in nus]
            ok &= not any(on_nu)
            if ok and len(exhibits) < 3:
                exhibits.append({"k": k, "omega": ej(ctx, om), "transversal_hits": on_nu})
            tally.check(ok, lambda: base_witness(ctx, k=k, omega=ej(ctx, om), transversal_hits=on_nu))
    info["exhibits"] = exhibits


# -- R4 -------------------------------------------------------------------------------

def _vector_for(ctx, mu, P):
    for _, w in _span_vectors(ctx, mu.vectors, 1):
        if normalize(w, ctx) == P:
            return w
    return None


def check_R4(cp, ctx, tally, info):
    if ctx.n < 3:
        raise HypothesisError("external F_q-subplanes need n >= 3")
    pairs = [(om, lam) for om in range(ctx.size) for lam in range(ctx.size)
             if fq_independent(ctx, [ctx.one, om, lam])]
    if cp.mode == "exhaustive":
        chosen = pairs[:1]
    else:
        chosen = [cp.rng(i).choice(pairs) for i in range(cp.samples)]
    for om, lam in chosen:
        mu = subplane_canonical(ctx, om, lam, 1)
        S = phi_affine(ctx, mu.points)
        wit = lambda **kw: base_witness(ctx, omega=ej(ctx, om), lam=ej(ctx, lam), **kw)  # noqa: E731
        tally.check(len(S) == ctx.q**2 + ctx.q + 1 and mu.tag == "external", lambda: wit(size=len(S)))
        tally.check(veronese_projection(ctx, om, lam) == S, lambda: wit(part="veronese projection"))
        tally.check(veronese_points(ctx, veronese_vectors(ctx, om, lam)) == S, lambda: wit(part="veronese vectors"))
        pre = {normalize(abb_affine(ctx, P), ctx): P for P in mu.points}
        for A, B in itertools.combinations(sorted(S), 2):
            u, w = _vector_for(ctx, mu, pre[A]), _vector_for(ctx, mu, pre[B])
            m = subline_from_vectors(ctx, u, w, 1)
            C = fit_nrc(ctx, phi_affine(ctx, m.points))
            ok = C is not None and C.point_set() <= S and A in C.point_set() and B in C.point_set()
            tally.check(ok, lambda: wit(pair=[pj(ctx, pre[A]), pj(ctx, pre[B])]))
