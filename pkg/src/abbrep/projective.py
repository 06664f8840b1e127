"""Points and flats of PG(2n, q) (Sigma) and PG(2n, q^n) (Sigma*).

A point of Sigma is written semantically as (a, b, c) with a, b in F_(q^n)
and c in F_q; for linear algebra it is flattened to 2n+1 coordinates over
F_q through the basis 1, beta, ..., beta^{n-1}.  A point of Sigma* is
((a_i); (b_i); c) with all 2n+1 entries in F_(q^n); its flat and semantic
views coincide.  Points are plain tuples normalised to a leading 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .gf_tower import FieldCtx
from .linalg import lincomb, normalize, nullspace, rank, rref


def flatten(ctx: FieldCtx, point) -> tuple[int, ...]:
    """(a, b, c) -> F_q vector of length 2n+1."""
    a, b, c = point
    if not ctx.in_subfield(c, 1):
        raise ValueError("c-coordinate of a Sigma point must lie in F_q")
    return ctx.fq_coords(a) + ctx.fq_coords(b) + (c,)


def unflatten(ctx: FieldCtx, vec) -> tuple[int, int, int]:
    n = ctx.n
    if len(vec) != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} coordinates")
    return ctx.from_fq_coords(vec[:n]), ctx.from_fq_coords(vec[n : 2 * n]), vec[2 * n]


def sigma_point(ctx: FieldCtx, a: int, b: int, c: int) -> tuple[int, ...]:
    """Normalised flat vector of the Sigma point (a, b, c)_{F_q}."""
    return normalize(flatten(ctx, (a, b, c)), ctx)


def is_affine(vec) -> bool:
    """True when the point lies off the hyperplane at infinity (last coordinate c)."""
    return vec[-1] != 0


@dataclass(frozen=True)
class Subspace:
    """A flat given by RREF generator rows.

    ``level`` is the degree over F_q of the scalar field (1 for Sigma and
    PG(rn-1, q), n for Sigma*).  The empty flat has no rows and dimension -1.
    """

    ctx: FieldCtx = dc_field(compare=False, repr=False)
    level: int
    length: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_vectors(cls, ctx: FieldCtx, vectors, level: int = 1, length: int | None = None) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if length is None:
            if not vectors:
                raise ValueError("length required for an empty generator list")
            length = len(vectors[0])
        if any(len(v) != length for v in vectors):
            raise ValueError("generators of different lengths")
        R, _ = rref(vectors, ctx)
        return cls(ctx, level, length, R)

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    def contains(self, vec) -> bool:
        return rank(self.rows + (tuple(vec),), self.ctx) == len(self.rows)

    def contains_subspace(self, other: "Subspace") -> bool:
        return rank(self.rows + other.rows, self.ctx) == len(self.rows)

    def scalars(self) -> list[int]:
        return self.ctx.subfield(self.level)

    def points(self) -> list[tuple[int, ...]]:
        return enumerate_points(self)

    def npoints(self) -> int:
        s = self.ctx.q**self.level
        return (s ** (self.dim + 1) - 1) // (s - 1)

    def to_json(self) -> list:
        return [list(r) for r in self.rows]


def _check_same(items):
    key = None
    for it in items:
        k = (it.level, it.length)
        if key is not None and k != key:
            raise ValueError("mixed-ambient arguments")
        key = k


def span(*items, ctx: FieldCtx | None = None, level: int | None = None) -> Subspace:
    """Smallest flat containing every argument (Subspaces or vectors)."""
    subs = [it for it in items if isinstance(it, Subspace)]
    vecs = [tuple(it) for it in items if not isinstance(it, Subspace)]
    _check_same(subs)
    if subs:
        ctx = subs[0].ctx
        level = subs[0].level if level is None else level
        if level != subs[0].level:
            raise ValueError("mixed-ambient arguments")
        length = subs[0].length
    else:
        if ctx is None:
            raise ValueError("ctx required when spanning bare vectors")
        level = 1 if level is None else level
        length = len(vecs[0])
    if any(len(v) != length for v in vecs):
        raise ValueError("mixed-ambient arguments")
    rows = [r for s in subs for r in s.rows] + vecs
    return Subspace.from_vectors(ctx, rows, level, length)


def meet(A: Subspace, B: Subspace) -> Subspace:
    """Largest flat contained in both (possibly the empty flat)."""
    _check_same([A, B])
    F, n = A.ctx, A.length
    dual = nullspace(A.rows, n, F) + nullspace(B.rows, n, F)
    if not dual:
        return A
    return Subspace.from_vectors(F, nullspace(dual, n, F), A.level, n)


def enumerate_points(S: Subspace) -> list[tuple[int, ...]]:
    """All points of S, normalised, in a fixed deterministic order."""
    F = S.ctx
    scal = S.scalars()
    rows = S.rows
    r = len(rows)
    out = []
    for lead in range(r):
        base = rows[lead]
        for tail in itertools.product(scal, repeat=r - lead - 1):
            if any(tail):
                v = lincomb((F.one,) + tail, rows[lead:], F)
            else:
                v = base
            out.append(v)
    return out


def whole_space(ctx: FieldCtx, length: int, level: int = 1) -> Subspace:
    ident = [tuple(ctx.one if i == j else 0 for j in range(length)) for i in range(length)]
    return Subspace(ctx, level, length, tuple(ident))


def h_infinity(ctx: FieldCtx, level: int = 1) -> Subspace:
    """The hyperplane c = 0 of Sigma (level 1) or Sigma* (level n)."""
    L = 2 * ctx.n + 1
    ident = [tuple(ctx.one if i == j else 0 for j in range(L)) for i in range(L - 1)]
    return Subspace(ctx, level, L, tuple(ident))


def point_to_json(ctx: FieldCtx, vec) -> list:
    """Semantic coordinates of a Sigma point as F_p coordinate arrays."""
    return [list(ctx.coords(x)) for x in unflatten(ctx, vec)]


def point_from_json(ctx: FieldCtx, data) -> tuple[int, ...]:
    a, b, c = (ctx.from_coords(x) if isinstance(x, list) else int(x) for x in data)
    return sigma_point(ctx, a, b, c)
