import itertools
import random

import pytest
from hypothesis import given, strategies as st

from abbrep import field
from abbrep.abb import StabiliserElt, random_stabiliser
from abbrep.gf_tower import divisors
from abbrep.linalg import normalize, rank
from abbrep.subobjects import (SubobjectError, Subline, abb_image, classify_vs_linfty,
                               reduce_to_canonical, smallest_containing_degree, subline_canonical,
                               subline_from_vectors, subline_through, subplane_canonical,
                               subplane_from_vectors, subplane_through)

FIELDS = [(3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3), (2, 2, 3), (3, 1, 4)]


def pglcount(Q):
    return Q * (Q * Q - 1)


def test_sublines_of_linfty_count():
    # oracle: |PGL(2, q^n)| / |PGL(2, q^k)| distinct sublines, collected from all triples
    ctx = field(3, 1, 2)
    pts = [(0, ctx.one, 0)] + [(ctx.one, b, 0) for b in range(ctx.size)]
    for k in (1, 2):
        found = {subline_through(ctx, *T, k) for T in itertools.combinations(pts, 3)}
        assert len(found) == pglcount(ctx.size) // pglcount(ctx.q**k)
        assert all(len(m.points) == ctx.q**k + 1 and m.tag == "contained" for m in found)


def test_canonical_subline_tags(ctx):
    for k in divisors(ctx.n):
        assert subline_canonical(ctx, 0, k).tag == "tangent"
        for om in range(ctx.size):
            tag = subline_canonical(ctx, om, k).tag
            assert tag == ("tangent" if ctx.in_subfield(om, k) else "external")


def test_subline_through_is_unique(ctx):
    rng = random.Random(1)
    for k in divisors(ctx.n):
        om = rng.randrange(ctx.size)
        m = subline_canonical(ctx, om, k)
        pts = sorted(m.points)
        for _ in range(5):
            T = rng.sample(pts, 3)
            assert subline_through(ctx, *T, k) == m
    with pytest.raises(SubobjectError):
        subline_through(ctx, (0, 0, ctx.one), (0, ctx.one, 0), (ctx.one, 0, 0), 1)


def test_subplane_through_is_unique(ctx):
    rng = random.Random(2)
    om, lam = rng.randrange(ctx.size), rng.randrange(ctx.size)
    pi = subplane_canonical(ctx, om, lam)
    Q = ctx.q
    assert len(pi.points) == Q * Q + Q + 1
    pts = sorted(pi.points)
    for _ in range(5):
        while True:
            F = rng.sample(pts, 4)
            if all(rank(T, ctx) == 3 for T in itertools.combinations(F, 3)):
                break
        assert subplane_through(ctx, *F, 1) == pi


def test_subplane_tags():
    ctx = field(3, 1, 3)
    # secant: omega, lambda in F_q; tangent: one direction only; external needs {1, w, l} independent
    assert subplane_canonical(ctx, 0, 0).tag == "secant"
    g = ctx.generator
    assert subplane_canonical(ctx, g, 0).tag == "tangent"
    assert subplane_canonical(ctx, g, ctx.mul(g, g)).tag == "external"


@given(st.sampled_from(FIELDS), st.integers(0, 10**6))
def test_reduce_subline_roundtrip(fp, seed):
    ctx = field(*fp)
    rng = random.Random(seed)
    k = rng.choice(divisors(ctx.n))
    X = random_stabiliser(ctx, rng)
    base = subline_canonical(ctx, rng.randrange(ctx.size), k)
    m = subline_from_vectors(ctx, *[X.chi0_vector(v) for v in base.vectors], k)
    Y, can = reduce_to_canonical(m)
    assert frozenset(Y.chi0(P) for P in can.points) == m.points
    assert can.tag == m.tag
    if m.tag == "tangent":
        assert can.vectors[0][2] == 0


@given(st.sampled_from(FIELDS), st.integers(0, 10**6))
def test_reduce_subplane_roundtrip(fp, seed):
    ctx = field(*fp)
    rng = random.Random(seed)
    X = random_stabiliser(ctx, rng)
    base = subplane_canonical(ctx, rng.randrange(ctx.size), rng.randrange(ctx.size))
    pi = subplane_from_vectors(ctx, [X.chi0_vector(v) for v in base.vectors], 1)
    Y, can = reduce_to_canonical(pi)
    assert frozenset(Y.chi0(P) for P in can.points) == pi.points
    assert can.tag == pi.tag


def test_reduce_identity_on_canonical():
    ctx = field(3, 1, 2)
    m = subline_canonical(ctx, ctx.generator, 1)
    X, can = reduce_to_canonical(m)
    assert can == m


def test_smallest_containing_degree():
    ctx = field(2, 2, 4)
    for om in (0, ctx.one, ctx.generator):
        m = subline_canonical(ctx, om, 1)
        # oracle: smallest k | n with omega in F_(q^k)
        d = next(k for k in divisors(ctx.n) if ctx.pow(om, ctx.q**k) == om)
        assert smallest_containing_degree(m) == d
    f4 = next(x for x in ctx.subfield(2) if not ctx.in_subfield(x, 1))
    assert smallest_containing_degree(subline_canonical(ctx, f4, 1)) == 2
    assert smallest_containing_degree(subline_canonical(ctx, f4, 2)) == 2
    contained = subline_through(ctx, (0, ctx.one, 0), (ctx.one, 0, 0), (ctx.one, ctx.one, 0), 1)
    with pytest.raises(SubobjectError):
        smallest_containing_degree(contained)


def test_tangent_subline_abb_image_spans_k_flat():
    from abbrep.projective import h_infinity, meet, span
    from abbrep.spread import element_of_subspace

    ctx = field(3, 1, 4)
    for k in divisors(4):
        m = subline_canonical(ctx, 0, k)
        aff = abb_image(ctx, m.points, affine_only=True)
        assert len(aff) == ctx.q**k
        S = span(*aff, ctx=ctx)
        assert S.dim == k
        assert element_of_subspace(ctx, meet(S, h_infinity(ctx)), k) is not None


def test_subline_equality_ignores_vectors(f9):
    ctx = f9
    m = subline_canonical(ctx, 0, 1)
    u, w = m.vectors
    m2 = subline_from_vectors(ctx, tuple(ctx.mul(2 * ctx.one, x) for x in u), w, 1)
    assert m2 == m and isinstance(m2, Subline)
    assert classify_vs_linfty(m2) == "tangent"
    with pytest.raises(SubobjectError):
        subline_from_vectors(ctx, u, u, 1)


def test_identity_stabiliser_element(f9):
    X = StabiliserElt.identity(f9)
    P = normalize((3, 4, f9.one), f9)
    assert X.chi0(P) == P
