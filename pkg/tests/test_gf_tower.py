import itertools

import pytest
from hypothesis import given, strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_rem

from abbrep import FieldCtx, field
from abbrep.gf_tower import (Elt, divisors, enumerate_subfield, frobenius, norm_k,
                             smallest_irreducible, subfield_degree)

CTXS = [field(3, 1, 2), field(2, 2, 2), field(5, 1, 2), field(3, 1, 3), field(2, 2, 4), field(3, 1, 4)]


def as_poly(ctx, x):
    # sympy wants high-to-low coefficients; coords are low-to-high in the power basis
    return list(reversed(ctx.coords(x)))


def from_poly(ctx, poly):
    poly = [0] * (ctx.m - len(poly)) + list(poly)
    return ctx.from_coords(tuple(reversed(poly)))


def modulus(ctx):
    return list(reversed(ctx.irreducible))


elements = st.sampled_from(CTXS).flatmap(
    lambda c: st.tuples(st.just(c), st.integers(0, c.size - 1), st.integers(0, c.size - 1)))


@given(elements)
def test_mul_matches_polynomial_oracle(args):
    ctx, x, y = args
    p = ctx.p
    expect = gf_rem(gf_mul(as_poly(ctx, x), as_poly(ctx, y), p, ZZ), modulus(ctx), p, ZZ)
    assert ctx.mul(x, y) == from_poly(ctx, expect)


@given(elements)
def test_add_matches_polynomial_oracle(args):
    ctx, x, y = args
    expect = gf_add(as_poly(ctx, x), as_poly(ctx, y), ctx.p, ZZ)
    assert ctx.add(x, y) == from_poly(ctx, expect)


@given(elements)
def test_field_axioms(args):
    ctx, x, y = args
    assert ctx.add(x, ctx.neg(x)) == 0
    assert ctx.sub(ctx.add(x, y), y) == x
    assert ctx.mul(x, ctx.one) == x
    if y:
        assert ctx.mul(ctx.div(x, y), y) == x
        assert ctx.mul(y, ctx.inv(y)) == ctx.one


@given(elements)
def test_frobenius_is_power_and_additive(args):
    ctx, x, y = args
    for e in range(ctx.n + 1):
        assert ctx.frob(x, e) == ctx.pow(x, ctx.q**e)
    assert ctx.frob(ctx.add(x, y)) == ctx.add(ctx.frob(x), ctx.frob(y))
    assert ctx.frob(ctx.frob(x, 1), ctx.n - 1) == x


def test_frobenius_examples(f9):
    t = Elt(f9, f9.beta)
    assert f9.irreducible == (1, 0, 1)  # t^2 + 1
    assert frobenius(Elt(f9, 0), 1).value == 0
    assert frobenius(Elt(f9, f9.one), 3).value == f9.one
    two_t = t + t
    assert frobenius(t, 1) == two_t
    # oracle: square-and-multiply t^3
    assert f9.mul(f9.mul(t.value, t.value), t.value) == two_t.value
    with pytest.raises(ValueError):
        frobenius(t, -1)


def test_norm_examples(f9):
    t = Elt(f9, f9.beta)
    assert norm_k(Elt(f9, f9.one), 2).value == f9.one
    assert norm_k(Elt(f9, 2 * f9.one), 1).value == 2 * f9.one
    N = norm_k(t, 2)
    assert N.value == (t * frobenius(t, 1)).value
    assert N.value != 0 and f9.in_subfield(N.value, 1)


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
def test_norm_lands_in_fq_and_is_multiplicative(ctx):
    for k in divisors(ctx.n):
        sub = ctx.subfield(k)
        for x in sub[:40]:
            N = ctx.norm(x, k)
            assert ctx.in_subfield(N, 1)
            assert (N == 0) == (x == 0)
        # surjective onto F_q^*
        assert {ctx.norm(x, k) for x in sub if x} == {c for c in ctx.subfield(1) if c}
    with pytest.raises(ValueError):
        ctx.norm(ctx.generator, 1) if ctx.n > 1 else ctx.norm(0, 2)


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
def test_subfields(ctx):
    full = range(ctx.size)
    for k in divisors(ctx.n):
        # oracle: filter the full field by x^(q^k) = x
        expect = [x for x in full if ctx.pow(x, ctx.q**k) == x]
        assert ctx.subfield(k) == expect
        assert len(expect) == ctx.q**k
        assert [e.value for e in enumerate_subfield(ctx, k)] == expect
        basis = ctx.subfield_basis(k)
        span = {ctx.sum(ctx.mul(c, b) for c, b in zip(cs, basis))
                for cs in itertools.product(ctx.subfield(1), repeat=k)}
        assert span == set(expect)
    assert subfield_degree(Elt(ctx, ctx.generator)) == ctx.n


@given(elements)
def test_subfield_degree_oracle(args):
    ctx, x, _ = args
    d = next(k for k in divisors(ctx.n) if ctx.pow(x, ctx.q**k) == x)
    assert ctx.subfield_degree(x) == d


def test_subfield_degree_f9_in_f81():
    ctx = field(3, 1, 4)
    f9 = set(ctx.subfield(2)) - set(ctx.subfield(1))
    assert len(f9) == 6
    assert all(ctx.subfield_degree(x) == 2 for x in f9)


def test_smallest_irreducible_is_lexicographically_first():
    from sympy import Poly, symbols

    x = symbols("x")
    for p, m in [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)]:
        f = smallest_irreducible(p, m)
        for tail in itertools.product(range(p), repeat=m):
            g = list(tail) + [1]
            irr = Poly(list(reversed(g)), x, modulus=p).is_irreducible
            if g == f:
                assert irr
                break
            assert not irr


def test_custom_irreducible_and_spec_roundtrip(tmp_path):
    ctx = FieldCtx(3, 1, 2, [2, 1, 1])  # x^2 + x + 2
    assert ctx.irreducible == (2, 1, 1)
    path = tmp_path / "f.json"
    import json

    path.write_text(json.dumps(ctx.spec()))
    again = FieldCtx.from_file(path)
    assert again.irreducible == ctx.irreducible
    assert all(again.mul(x, y) == ctx.mul(x, y) for x in range(9) for y in range(9))


@pytest.mark.parametrize("args", [(4, 1, 2), (3, 1, 2, [1, 0, 0]), (3, 1, 2, [1, 1]), (2, 1, 11)])
def test_bad_fields_rejected(args):
    with pytest.raises(ValueError):
        FieldCtx(*args)


def test_fq_coordinates_roundtrip():
    for ctx in CTXS:
        for x in range(ctx.size):
            cs = ctx.fq_coords(x)
            assert all(ctx.in_subfield(c, 1) for c in cs)
            assert ctx.from_fq_coords(cs) == x


def test_elt_operators(f27):
    a, b = f27.elt(5), f27.elt(17)
    assert (a * b).value == f27.mul(5, 17)
    assert (a - b + b) == a
    assert (a / b * b) == a
    assert (a ** 26).value == f27.one
    assert -(-a) == a
