"""Decide which subline or subplane, if any, has a given ABB image."""

from __future__ import annotations

import itertools

from ..abb import abb_inverse_affine
from ..curves import fit_nrc
from ..gf_tower import FieldCtx, divisors
from ..linalg import normalize, rank
from ..spread import element_through
from ..subobjects import (abb_image, canonical_parameters, smallest_containing_degree,
                          subline_through, subplane_through)
from .common import ej

CITES = {
    ("subline", "contained"): "T2.10",
    ("subline", "tangent"): "T2.3",
    ("subline", "external"): "T2.6",
    ("subplane", "secant"): "T3.1",
    ("subplane", "tangent"): "T3.5",
    ("subplane", "external"): "R4",
}


def _unclassified(reason):
    return {"match": "unclassified", "reason": reason}


def classify_point_set(ctx: FieldCtx, points) -> dict:
    """Name the subline or subplane whose ABB image is the given set of Sigma points.

    Affine points are pulled back through the ABB map; points of H_infinity must
    form whole elements of D and give points of l_infinity.  A set of affine
    points alone also matches a tangent object whose points at infinity were left out.
    """
    pts = {normalize(tuple(P), ctx) for P in points}
    if not pts:
        return _unclassified("empty set")
    aff = {P for P in pts if P[-1] != 0}
    inf = pts - aff
    linf = set()
    covered = set()
    for P in sorted(inf):
        if P in covered:
            continue
        E = element_through(ctx, P, ctx.n)
        Epts = set(E.points())
        if not Epts <= inf:
            return _unclassified("points at infinity do not form whole spread elements")
        covered |= Epts
        linf.add(normalize((E.a, E.b, 0), ctx))
    pre = {normalize(abb_inverse_affine(ctx, P), ctx) for P in aff}
    allpre = sorted(pre | linf)
    r = rank(allpre, ctx) if allpre else 0
    if r <= 2:
        found = _try_sublines(ctx, pts, aff, pre, linf, allpre)
    else:
        found = _try_subplanes(ctx, pts, aff, pre, linf)
    return found or _unclassified("no subline or subplane has this image")


def _matches(ctx, obj, pts, aff, linf):
    img = abb_image(ctx, obj.points)
    img_aff = {P for P in img if P[-1] != 0}
    obj_inf = {P for P in obj.points if P[2] == 0}
    if img_aff != aff:
        return False
    return img == pts or (not linf and obj_inf and pts == aff)


def _record(ctx, kind, obj, pts):
    tag = obj.tag
    rec = {"match": f"{tag} {kind}", "k": obj.level, "theorem": CITES[(kind, tag)],
           "points": len(pts)}
    if tag != "contained":
        params = canonical_parameters(obj)
        rec["canonical"] = {name: ej(ctx, v) for name, v in params.items()}
    if kind == "subline" and tag == "external":
        r = smallest_containing_degree(obj)
        rec["smallest_tangent_level"] = r
        if obj.level == 1:
            C = fit_nrc(ctx, {P for P in pts if P[-1] != 0})
            rec["certificate"] = {"nrc_degree": C.degree if C is not None else None}
        else:
            rec["theorem"] = "C2.7"
    if kind == "subplane" and tag == "tangent":
        rec["smallest_secant_level"] = smallest_containing_degree(obj)
    return rec


def _try_sublines(ctx, pts, aff, pre, linf, allpre):
    options = [list(allpre)]
    if not linf and len(pre) >= 2:
        # affine points only: also try adding the point at infinity of their line
        a, b = sorted(pre)[:2]
        d = normalize(tuple(ctx.sub(x, y) for x, y in zip(a, b)), ctx)
        options.append(sorted(pre | {d}))
    for cand in options:
        if len(cand) < 3:
            continue
        for k in divisors(ctx.n):
            m = subline_through(ctx, cand[0], cand[1], cand[2], k)
            if _matches(ctx, m, pts, aff, linf):
                return _record(ctx, "subline", m, pts)
    return None


def _general_position_quads(ctx, cands, limit=200):
    n = 0
    for quad in itertools.combinations(cands, 4):
        if all(rank(t, ctx) == 3 for t in itertools.combinations(quad, 3)):
            yield quad
            n += 1
            if n >= limit:
                return


def _try_subplanes(ctx, pts, aff, pre, linf):
    cands = sorted(linf) + sorted(pre)
    for quad in _general_position_quads(ctx, cands, 1):
        for k in divisors(ctx.n):
            mu = subplane_through(ctx, *quad, k)
            if _matches(ctx, mu, pts, aff, linf):
                return _record(ctx, "subplane", mu, pts)
    return None


def point_set_from_json(ctx: FieldCtx, data) -> list:
    from ..projective import point_from_json

    return [point_from_json(ctx, P) for P in data]
