import itertools
import random

import pytest
from hypothesis import given, strategies as st

from abbrep import field
from abbrep.linalg import rank
from abbrep.projective import (Subspace, enumerate_points, flatten, h_infinity, meet, point_from_json,
                               point_to_json, sigma_point, span, unflatten, whole_space)
from abbrep.spread import spread_element


def test_flatten_basis_points(ctx):
    n = ctx.n
    assert flatten(ctx, (0, 0, ctx.one)) == (0,) * (2 * n) + (ctx.one,)
    assert flatten(ctx, (ctx.one, 0, 0)) == (ctx.one,) + (0,) * (2 * n)
    with pytest.raises(ValueError):
        flatten(ctx, (0, 0, ctx.generator))


def test_flatten_roundtrip(ctx):
    rng = random.Random(1)
    for _ in range(50):
        a, b = rng.randrange(ctx.size), rng.randrange(ctx.size)
        c = rng.choice(ctx.subfield(1))
        assert unflatten(ctx, flatten(ctx, (a, b, c))) == (a, b, c)


def test_span_and_enumerate_small(ctx):
    P = sigma_point(ctx, ctx.one, 0, 0)
    Q = sigma_point(ctx, 0, 0, ctx.one)
    assert span(P, ctx=ctx).dim == 0
    assert len(span(P, ctx=ctx).points()) == 1
    L = span(P, Q, ctx=ctx)
    assert L.dim == 1 and len(L.points()) == ctx.q + 1


def test_spread_element_span_q3_n2():
    ctx = field(3, 1, 2)
    E = spread_element(ctx, ctx.one, ctx.beta, 2)
    pts = E.points()
    assert len(pts) == 4
    S = span(*pts, ctx=ctx)
    # oracle: rank of the stacked flattened coordinates
    assert S.dim == rank(pts, ctx) - 1 == 1


def test_h_infinity_count_q3_n2():
    ctx = field(3, 1, 2)
    H = h_infinity(ctx)
    pts = enumerate_points(H)
    assert len(pts) == len(set(pts)) == (3**4 - 1) // 2 == 40
    assert all(P[-1] == 0 for P in pts)


def test_enumerate_points_matches_npoints(ctx):
    rng = random.Random(2)
    L = 2 * ctx.n + 1
    for d in (0, 1, 2):
        S = Subspace.from_vectors(ctx, [tuple(rng.choice(ctx.subfield(1)) for _ in range(L))
                                        for _ in range(d + 1)])
        pts = S.points()
        assert len(pts) == len(set(pts)) == S.npoints()
        assert all(S.contains(P) for P in pts)


def test_meet_examples(ctx):
    H = h_infinity(ctx)
    assert meet(H, H) == H
    L = 2 * ctx.n + 1
    e0 = tuple(ctx.one if i == 0 else 0 for i in range(L))
    other = Subspace.from_vectors(ctx, [tuple(ctx.one if i == j else 0 for i in range(L))
                                        for j in range(L) if j != 0])
    M = meet(H, other)
    assert M.dim == 2 * ctx.n - 2
    assert not M.contains(e0)


vecs = st.lists(st.lists(st.integers(0, 2), min_size=5, max_size=5), min_size=1, max_size=4)


@given(vecs, vecs)
def test_grassmann_formula(a, b):
    ctx = field(3, 1, 2)
    a = [tuple(v) for v in a if any(v)] or [(1, 0, 0, 0, 0)]
    b = [tuple(v) for v in b if any(v)] or [(0, 1, 0, 0, 0)]
    A = Subspace.from_vectors(ctx, a)
    B = Subspace.from_vectors(ctx, b)
    S, M = span(A, B), meet(A, B)
    assert S.dim + M.dim == A.dim + B.dim
    assert set(M.points() if M.rows else []) == set(A.points()) & set(B.points())


def test_mixed_ambients_rejected():
    ctx = field(3, 1, 2)
    A = whole_space(ctx, 5)
    B = whole_space(ctx, 5, level=2)
    with pytest.raises(ValueError):
        span(A, B)
    with pytest.raises(ValueError):
        meet(A, whole_space(ctx, 4))


def test_point_json_roundtrip(ctx):
    rng = random.Random(3)
    for _ in range(20):
        P = sigma_point(ctx, rng.randrange(ctx.size), rng.randrange(ctx.size), ctx.one)
        assert point_from_json(ctx, point_to_json(ctx, P)) == P


def test_sigma_point_count():
    ctx = field(2, 1, 2)
    pts = whole_space(ctx, 5).points()
    assert len(set(pts)) == (2**5 - 1)
    assert all(next(x for x in P if x) == ctx.one for P in pts)
    combos = itertools.combinations(pts[:6], 2)
    assert all(span(P, Q, ctx=ctx).dim == 1 for P, Q in combos)
