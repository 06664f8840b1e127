import random

import pytest
from hypothesis import given, strategies as st

from abbrep import field
from abbrep.abb import (StabiliserElt, abb_affine, abb_inverse_affine, abb_map, affine_plane_points,
                        chi_actions, embed_iota, iota_subspace, iota_vector, plane_points,
                        random_stabiliser, sigma_apply, sigma_points, sigma_vec, trace_on_sigma)
from abbrep.linalg import normalize
from abbrep.projective import Subspace, flatten, h_infinity
from abbrep.spread import spread_element


def test_plane_point_count(ctx):
    Q = ctx.size
    pts = plane_points(ctx)
    assert len(pts) == len(set(pts)) == Q * Q + Q + 1


def test_abb_map_examples(ctx):
    one = ctx.one
    assert abb_map(ctx, (0, 0, one)) == flatten(ctx, (0, 0, one))
    E = abb_map(ctx, (0, one, 0))
    expect = {normalize(flatten(ctx, (0, x, 0)), ctx) for x in range(1, ctx.size)}
    assert set(E.points()) == expect
    assert E.dim == ctx.n - 1


def test_abb_affine_is_bijection(ctx):
    imgs = [abb_affine(ctx, P) for P in affine_plane_points(ctx)]
    assert len(set(imgs)) == ctx.size**2
    assert all(v[-1] == ctx.one for v in imgs)
    for P, v in zip(affine_plane_points(ctx)[:50], imgs):
        assert abb_inverse_affine(ctx, v) == P


def test_linfty_images_partition_h_infinity(ctx):
    if ctx.size > 64:
        pytest.skip("large")
    seen = []
    for P in plane_points(ctx):
        if P[2] == 0:
            seen.extend(abb_map(ctx, P).points())
    H = h_infinity(ctx).points()
    assert sorted(seen) == sorted(H)


def test_iota_image_q3_n2():
    ctx = field(3, 1, 2)
    pts = sigma_points(ctx)
    assert len(pts) == (3**5 - 1) // 2 == 121
    imgs = {embed_iota(ctx, P) for P in pts}
    assert len(imgs) == 121
    # every image is fixed by sigma, and sigma has order n
    for v in imgs:
        assert sigma_apply(ctx, v) == v
    w = tuple(range(1, 6))
    assert sigma_vec(ctx, w, ctx.n) == w


def test_sigma_fixed_points_are_iota_image():
    ctx = field(2, 1, 2)
    import itertools

    fixed = set()
    for v in itertools.product(range(ctx.size), repeat=5):
        if any(v):
            P = normalize(v, ctx)
            if sigma_apply(ctx, P) == P:
                fixed.add(P)
    assert fixed == {embed_iota(ctx, P) for P in sigma_points(ctx)}


def test_iota_is_fq_linear(ctx):
    rng = random.Random(5)
    Fq = ctx.subfield(1)
    L = 2 * ctx.n + 1
    for _ in range(20):
        u = tuple(rng.choice(Fq) for _ in range(L))
        w = tuple(rng.choice(Fq) for _ in range(L))
        c = rng.choice(Fq)
        lhs = iota_vector(ctx, tuple(ctx.add(ctx.mul(c, a), b) for a, b in zip(u, w)))
        rhs = tuple(ctx.add(ctx.mul(c, a), b) for a, b in zip(iota_vector(ctx, u), iota_vector(ctx, w)))
        assert lhs == rhs


def test_trace_of_extension_is_original(ctx):
    rng = random.Random(6)
    L = 2 * ctx.n + 1
    Fq = ctx.subfield(1)
    for d in range(3):
        S = Subspace.from_vectors(ctx, [tuple(rng.choice(Fq) for _ in range(L)) for _ in range(d + 1)])
        assert trace_on_sigma(iota_subspace(S)) == S


def test_identity_actions_are_identities(ctx):
    X = StabiliserElt.identity(ctx)
    c0, c, cs = chi_actions(X)
    rng = random.Random(7)
    for _ in range(10):
        P = normalize((rng.randrange(ctx.size), rng.randrange(ctx.size), ctx.one), ctx)
        assert c0(P) == P
        v = normalize(abb_affine(ctx, P), ctx)
        assert c(v) == v
        w = embed_iota(ctx, v)
        assert cs(w) == w


@given(st.integers(0, 10**6), st.sampled_from([(3, 1, 2), (2, 2, 2), (3, 1, 3)]))
def test_commuting_diagrams(seed, fp):
    ctx = field(*fp)
    rng = random.Random(seed)
    X = random_stabiliser(ctx, rng)
    for _ in range(5):
        P = normalize((rng.randrange(ctx.size), rng.randrange(ctx.size), ctx.one), ctx)
        assert normalize(abb_affine(ctx, X.chi0(P)), ctx) == X.chi(abb_affine(ctx, P))
        v = abb_affine(ctx, P)
        assert embed_iota(ctx, X.chi(v)) == X.chi_star(embed_iota(ctx, v))
    # points at infinity go to spread elements
    a, b = rng.randrange(ctx.size), rng.randrange(1, ctx.size)
    E = spread_element(ctx, a, b, ctx.n)
    img = X.chi_subspace(E.subspace)
    Q = X.chi0((a, b, 0))
    assert img == abb_map(ctx, Q).subspace


def test_singular_stabiliser_rejected(f9):
    with pytest.raises(ValueError):
        StabiliserElt(f9, 0, 0, 0, f9.one, 0, 0)
    with pytest.raises(ValueError):
        StabiliserElt.from_matrix(f9, ((f9.one, 0, f9.one), (0, f9.one, 0), (0, 0, f9.one)))
