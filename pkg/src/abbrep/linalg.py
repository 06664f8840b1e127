"""Row reduction over a FieldCtx.

Vectors are tuples of field ints.  The same routines serve PG(2n, q) (entries
restricted to F_q) and PG(2n, q^n) (entries anywhere in F_(q^n)), since F_q
arithmetic is the restriction of the big field's tables.
"""

from __future__ import annotations

from .gf_tower import FieldCtx


def rref(rows, F: FieldCtx) -> tuple[tuple[tuple[int, ...], ...], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    M = [list(r) for r in rows]
    if not M:
        return (), []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        if row[c] != F.one:
            mi = mul[inv[row[c]]]
            row = [mi[x] for x in row]
            M[r] = row
        for i in range(len(M)):
            if i != r:
                x = M[i][c]
                if x:
                    mf = mul[neg[x]]
                    M[i] = [add[a][mf[b]] for a, b in zip(M[i], row)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return tuple(tuple(x) for x in M[:r]), pivots


def rank(rows, F: FieldCtx) -> int:
    return len(rref(rows, F)[0])


def nullspace(rows, ncols: int, F: FieldCtx) -> list[tuple[int, ...]]:
    """Basis of {x : row . x = 0 for every row}."""
    R, pivots = rref(rows, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][f])
        basis.append(tuple(v))
    return basis


def normalize(vec, F: FieldCtx) -> tuple[int, ...]:
    """Scale so the first nonzero entry is 1."""
    for x in vec:
        if x:
            if x == F.one:
                return tuple(vec)
            mi = F.mul_table[F.inv_table[x]]
            return tuple(mi[y] for y in vec)
    raise ValueError("zero vector has no projective point")


def lincomb(coeffs, vecs, F: FieldCtx) -> tuple[int, ...]:
    add, mul = F.add_table, F.mul_table
    out = [0] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if c:
            mc = mul[c]
            out = [add[a][mc[b]] for a, b in zip(out, v)]
    return tuple(out)


def scale(c: int, vec, F: FieldCtx) -> tuple[int, ...]:
    mc = F.mul_table[c]
    return tuple(mc[x] for x in vec)


def vadd(u, v, F: FieldCtx) -> tuple[int, ...]:
    add = F.add_table
    return tuple(add[a][b] for a, b in zip(u, v))


def vsub(u, v, F: FieldCtx) -> tuple[int, ...]:
    add, neg = F.add_table, F.neg_table
    return tuple(add[a][neg[b]] for a, b in zip(u, v))


def coordinates(vec, basis, F: FieldCtx) -> tuple[int, ...] | None:
    """Solve vec = sum c_i basis_i; None if vec is outside the span."""
    k = len(basis)
    n = len(vec)
    # columns are the basis vectors, augmented by vec
    aug = [[basis[j][i] for j in range(k)] + [vec[i]] for i in range(n)]
    R, pivots = rref(aug, F)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("basis vectors are dependent")
    return tuple(R[i][k] for i in range(k))


def mat_mul(A, B, F: FieldCtx):
    mul = F.mul_table
    cols = list(zip(*B))
    out = []
    for row in A:
        out.append(tuple(F.sum(mul[a][b] for a, b in zip(row, col)) for col in cols))
    return tuple(out)


def vec_mat(v, A, F: FieldCtx) -> tuple[int, ...]:
    """Row vector times matrix."""
    return mat_mul([v], A, F)[0]


def det(A, F: FieldCtx) -> int:
    M = [list(r) for r in A]
    n = len(M)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        ic = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.neg(F.mul(M[i][c], ic))
                M[i] = [F.add(a, F.mul(f, b)) for a, b in zip(M[i], M[c])]
    return d


def mat_inv(A, F: FieldCtx):
    n = len(A)
    aug = [list(A[i]) + [F.one if i == j else 0 for j in range(n)] for i in range(n)]
    R, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ValueError("singular matrix")
    return tuple(tuple(r[n:]) for r in R)


def enumerate_subspaces(F: FieldCtx, n: int, k: int, scalars=None):
    """Every k-dimensional subspace of scalars^n, as RREF row tuples.

    ``scalars`` defaults to F_q (the degree-1 subfield of F).
    """
    import itertools

    sub = F.subfield(1) if scalars is None else scalars
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for vals in itertools.product(sub, repeat=len(free)):
            M = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                M[r][p] = F.one
            for (r, c), v in zip(free, vals):
                M[r][c] = v
            yield tuple(tuple(row) for row in M)
