import itertools

from hypothesis import given, strategies as st

from abbrep import field
from abbrep.linalg import (coordinates, det, enumerate_subspaces, mat_inv, mat_mul, normalize,
                           nullspace, rank, rref)

F = field(3, 1, 1)
F4 = field(2, 2, 1)
FS = [F, F4]


def span_size(rows, ctx):
    # brute-force oracle: count the distinct linear combinations
    if not rows:
        return 1
    from abbrep.linalg import lincomb

    return len({lincomb(cs, rows, ctx) for cs in itertools.product(range(ctx.size), repeat=len(rows))})


def matrices(rmax=4, cmax=4):
    return st.sampled_from(FS).flatmap(lambda c: st.tuples(
        st.just(c),
        st.integers(1, rmax).flatmap(lambda r: st.integers(1, cmax).flatmap(
            lambda n: st.lists(st.lists(st.integers(0, c.size - 1), min_size=n, max_size=n),
                               min_size=r, max_size=r)))))


@given(matrices())
def test_rank_matches_span_size(args):
    ctx, rows = args
    r = rank(rows, ctx)
    assert ctx.size**r == span_size([tuple(x) for x in rows], ctx)


@given(matrices())
def test_rref_preserves_row_space(args):
    ctx, rows = args
    R, pivots = rref(rows, ctx)
    assert len(R) == len(pivots) == rank(rows, ctx)
    for row, piv in zip(R, pivots):
        assert row[piv] == ctx.one
        assert all(x == 0 for x in row[:piv])
    assert rank(list(R) + [tuple(r) for r in rows], ctx) == len(R)


@given(matrices())
def test_nullspace(args):
    ctx, rows = args
    n = len(rows[0])
    N = nullspace(rows, n, ctx)
    assert len(N) == n - rank(rows, ctx)
    for v in N:
        for r in rows:
            assert ctx.sum(ctx.mul(a, b) for a, b in zip(r, v)) == 0


def leibniz(A, ctx):
    n = len(A)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ctx.prod(A[i][perm[i]] for i in range(n))
        total = ctx.sub(total, term) if inv % 2 else ctx.add(total, term)
    return total


@given(st.sampled_from(FS).flatmap(lambda c: st.tuples(st.just(c), st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, c.size - 1), min_size=n, max_size=n),
                       min_size=n, max_size=n)))))
def test_det_and_inverse(args):
    ctx, A = args
    d = det(A, ctx)
    assert d == leibniz(A, ctx)
    assert (d != 0) == (rank(A, ctx) == len(A))
    if d:
        I = mat_mul(A, mat_inv(A, ctx), ctx)
        assert I == tuple(tuple(ctx.one if i == j else 0 for j in range(len(A))) for i in range(len(A)))


def test_coordinates_and_normalize():
    ctx = field(3, 1, 2)
    basis = [(ctx.one, 0, 5), (0, ctx.one, 7)]
    v = tuple(ctx.add(ctx.mul(4, a), ctx.mul(8, b)) for a, b in zip(*basis))
    assert coordinates(v, basis, ctx) == (4, 8)
    assert coordinates((0, 0, ctx.one), basis, ctx) is None
    w = normalize((0, 5, 7), ctx)
    assert w[1] == ctx.one


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def test_enumerate_subspaces_counts():
    for ctx, n, k in [(F, 4, 2), (F4, 4, 2), (F, 3, 1), (F, 5, 2), (F4, 3, 2)]:
        subs = list(enumerate_subspaces(ctx, n, k))
        assert len(subs) == len(set(subs)) == gaussian_binomial(n, k, ctx.size)
        assert all(rank(S, ctx) == k and rref(S, ctx)[0] == S for S in subs)
