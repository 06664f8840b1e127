import random

import pytest

from abbrep import field
from abbrep.abb import abb_affine
from abbrep.linalg import normalize
from abbrep.projective import h_infinity, meet, point_to_json, span
from abbrep.spread import element_of_subspace, spread_element
from abbrep.subobjects import abb_image, subline_canonical, subplane_canonical
from abbrep.verify import classify_point_set
from abbrep.verify.classify import point_set_from_json
from abbrep.verify.common import transport_subline
from abbrep.abb import random_stabiliser


def test_tangent_subline_affine_points_only():
    ctx = field(3, 1, 2)
    pts = abb_image(ctx, subline_canonical(ctx, 0, 1).points, affine_only=True)
    assert len(pts) == 3
    rec = classify_point_set(ctx, pts)
    assert rec["match"] == "tangent subline" and rec["k"] == 1 and rec["theorem"] == "T2.3"


def test_tangent_subline_full_image():
    ctx = field(3, 1, 4)
    pts = abb_image(ctx, subline_canonical(ctx, 0, 2).points)
    rec = classify_point_set(ctx, pts)
    assert rec["match"] == "tangent subline" and rec["k"] == 2


@pytest.mark.parametrize("fp", [(3, 1, 3), (2, 2, 3), (3, 1, 2)])
def test_external_subline_certificate(fp):
    ctx = field(*fp)
    rng = random.Random(2)
    om = next(x for x in range(ctx.size) if ctx.subfield_degree(x) == ctx.n)
    m = transport_subline(random_stabiliser(ctx, rng), subline_canonical(ctx, om, 1))
    rec = classify_point_set(ctx, abb_image(ctx, m.points))
    assert rec["match"] == "external subline"
    assert rec["k"] == 1
    assert rec["certificate"]["nrc_degree"] == ctx.n


def test_subplanes():
    ctx = field(3, 1, 3)
    g = ctx.generator
    cases = {"secant subplane": (0, 0), "tangent subplane": (g, 0), "external subplane": (g, ctx.mul(g, g))}
    for name, (om, lam) in cases.items():
        rec = classify_point_set(ctx, abb_image(ctx, subplane_canonical(ctx, om, lam).points))
        assert rec["match"] == name, rec


def perturbed_flat(ctx, k):
    """Affine k-flat whose trace lies in one D element but is not a D_k element.

    (A trace meeting several D elements would be a secant subplane image instead.)
    """
    H = h_infinity(ctx)
    E = spread_element(ctx, 0, ctx.one, k)
    big = spread_element(ctx, 0, ctx.one, ctx.n)
    P = next(P for P in big.points() if not E.subspace.contains(P) and
             element_of_subspace(ctx, span(P, E.points()[0], ctx=ctx), k) is None)
    T = span(P, *E.points()[: k - 1], ctx=ctx) if k > 1 else span(P, ctx=ctx)
    A = normalize(abb_affine(ctx, (0, 0, ctx.one)), ctx)
    F = span(A, T)
    assert element_of_subspace(ctx, meet(F, H), k) is None
    return [X for X in F.points() if X[-1] != 0]


def test_unclassified_flat():
    ctx = field(3, 1, 4)
    pts = perturbed_flat(ctx, 2)
    assert len(pts) == 9
    rec = classify_point_set(ctx, pts)
    assert rec["match"] == "unclassified" and "reason" in rec


def test_garbage_is_unclassified():
    ctx = field(3, 1, 2)
    rng = random.Random(5)
    pts = {normalize(abb_affine(ctx, (rng.randrange(9), rng.randrange(9), ctx.one)), ctx) for _ in range(5)}
    assert classify_point_set(ctx, pts)["match"] == "unclassified"


def test_point_set_json_roundtrip():
    ctx = field(3, 1, 2)
    pts = sorted(abb_image(ctx, subline_canonical(ctx, 0, 1).points))
    data = [point_to_json(ctx, P) for P in pts]
    assert point_set_from_json(ctx, data) == pts
