"""The ABB map, the embedding of Sigma into Sigma*, the collineation sigma,
and the three actions of the stabiliser of l_infinity.

Sigma* vectors are laid out as (a_0..a_{n-1}, b_0..b_{n-1}, c).  Points of
PG(2, q^n) are normalised triples over F_(q^n).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf_tower import FieldCtx
from .linalg import det, normalize
from .projective import Subspace, flatten, unflatten, sigma_point


# -- PG(2, q^n) ---------------------------------------------------------------

def plane_point(ctx: FieldCtx, a: int, b: int, c: int) -> tuple[int, int, int]:
    return normalize((a, b, c), ctx)


def plane_points(ctx: FieldCtx) -> list[tuple[int, int, int]]:
    N = range(ctx.size)
    pts = [(0, 0, ctx.one)]
    pts += [(0, ctx.one, c) for c in N]
    pts += [(ctx.one, b, c) for b in N for c in N]
    return pts


def affine_plane_points(ctx: FieldCtx) -> list[tuple[int, int, int]]:
    """Affine points written as (a, b, 1)."""
    return [(a, b, ctx.one) for a in range(ctx.size) for b in range(ctx.size)]


def on_linfty(P) -> bool:
    return P[2] == 0


def affine_rep(ctx: FieldCtx, P) -> tuple[int, int, int]:
    """Representative (a, b, 1) of an affine point of PG(2, q^n)."""
    if P[2] == 0:
        raise ValueError("point lies on l_infinity")
    c = ctx.inv(P[2])
    return ctx.mul(P[0], c), ctx.mul(P[1], c), ctx.one


# -- the ABB map ----------------------------------------------------------------

def abb_map(ctx: FieldCtx, P):
    """Affine points go to Sigma points, points of l_infinity to elements of D."""
    from .spread import spread_element

    if P[2] != 0:
        a, b, _ = affine_rep(ctx, P)
        return sigma_point(ctx, a, b, ctx.one)
    return spread_element(ctx, P[0], P[1], ctx.n)


def abb_affine(ctx: FieldCtx, P) -> tuple[int, ...]:
    a, b, _ = affine_rep(ctx, P)
    return flatten(ctx, (a, b, ctx.one))


def abb_inverse_affine(ctx: FieldCtx, vec) -> tuple[int, int, int]:
    """The affine point of PG(2, q^n) whose image is the affine Sigma point vec."""
    if vec[-1] == 0:
        raise ValueError("not an affine point of Sigma")
    a, b, c = unflatten(ctx, normalize_affine(ctx, vec))
    return a, b, c


def normalize_affine(ctx: FieldCtx, vec) -> tuple[int, ...]:
    """Scale an affine Sigma vector to c = 1."""
    c = vec[-1]
    mi = ctx.mul_table[ctx.inv(c)]
    return tuple(mi[x] for x in vec)


# -- Sigma* -------------------------------------------------------------------------

def iota_vector(ctx: FieldCtx, vec) -> tuple[int, ...]:
    """F_q-linear map from flat Sigma vectors to Sigma* vectors (not normalised)."""
    a, b, c = unflatten(ctx, vec)
    n = ctx.n
    return tuple(ctx.frob(a, i) for i in range(n)) + tuple(ctx.frob(b, i) for i in range(n)) + (c,)


def embed_iota(ctx: FieldCtx, vec) -> tuple[int, ...]:
    return normalize(iota_vector(ctx, vec), ctx)


def iota_subspace(S: Subspace) -> Subspace:
    """F_(q^n)-extension of a flat of Sigma, as a flat of Sigma*."""
    ctx = S.ctx
    return Subspace.from_vectors(ctx, [iota_vector(ctx, r) for r in S.rows], ctx.n, S.length)


def iota_inverse(ctx: FieldCtx, v) -> tuple[int, ...]:
    """Flat Sigma vector w with iota(w) = v; v must be a sigma-fixed vector (not just point)."""
    n = ctx.n
    a, b, c = v[0], v[n], v[2 * n]
    w = flatten(ctx, (a, b, c))
    if iota_vector(ctx, w) != tuple(v):
        raise ValueError("vector is not sigma-fixed")
    return w


def sigma_vec(ctx: FieldCtx, v, e: int = 1) -> tuple[int, ...]:
    """sigma^e on a Sigma* vector: cyclic shift within each block plus q-th powers."""
    n = ctx.n
    e %= n
    if e == 0:
        return tuple(v)
    a, b = v[:n], v[n : 2 * n]
    a = a[-e:] + a[:-e]
    b = b[-e:] + b[:-e]
    return tuple(ctx.frob(x, e) for x in a) + tuple(ctx.frob(x, e) for x in b) + (ctx.frob(v[2 * n], e),)


def sigma_apply(ctx: FieldCtx, P, e: int = 1) -> tuple[int, ...]:
    return normalize(sigma_vec(ctx, P, e), ctx)


def sigma_subspace(L: Subspace, e: int = 1) -> Subspace:
    return Subspace.from_vectors(L.ctx, [sigma_vec(L.ctx, r, e) for r in L.rows], L.level, L.length)


def trace_on_sigma(L: Subspace) -> Subspace:
    """The flat of Sigma formed by the points P with iota(P) in the Sigma* flat L."""
    from .linalg import nullspace

    ctx = L.ctx
    n, length = ctx.n, L.length
    duals = nullspace(L.rows, length, ctx)
    basis_images = [iota_vector(ctx, tuple(ctx.one if i == j else 0 for j in range(length))) for i in range(length)]
    eqs = []
    for h in duals:
        w = [ctx.sum(ctx.mul(x, y) for x, y in zip(img, h)) for img in basis_images]
        coords = [ctx.fq_coords(x) for x in w]
        for r in range(n):
            eqs.append(tuple(c[r] for c in coords))
    if not eqs:
        from .projective import whole_space

        return whole_space(ctx, length)
    return Subspace.from_vectors(ctx, nullspace(eqs, length, ctx), 1, length)


# -- stabiliser of l_infinity -----------------------------------------------------------

@dataclass(frozen=True)
class StabiliserElt:
    """X = [[x11, x12, 0], [x21, x22, 0], [x31, x32, 1]], acting on row vectors from the right."""

    ctx: FieldCtx
    x11: int
    x12: int
    x21: int
    x22: int
    x31: int
    x32: int

    def __post_init__(self):
        F = self.ctx
        if F.sub(F.mul(self.x11, self.x22), F.mul(self.x12, self.x21)) == 0:
            raise ValueError("singular stabiliser matrix")

    @classmethod
    def from_matrix(cls, ctx: FieldCtx, X) -> "StabiliserElt":
        if X[0][2] != 0 or X[1][2] != 0 or X[2][2] != ctx.one:
            raise ValueError("matrix does not stabilise l_infinity in the normal form")
        return cls(ctx, X[0][0], X[0][1], X[1][0], X[1][1], X[2][0], X[2][1])

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "StabiliserElt":
        return cls(ctx, ctx.one, 0, 0, ctx.one, 0, 0)

    @property
    def matrix(self):
        one = self.ctx.one
        return ((self.x11, self.x12, 0), (self.x21, self.x22, 0), (self.x31, self.x32, one))

    def _row(self, a, b, c):
        F = self.ctx
        return (
            F.sum((F.mul(a, self.x11), F.mul(b, self.x21), F.mul(c, self.x31))),
            F.sum((F.mul(a, self.x12), F.mul(b, self.x22), F.mul(c, self.x32))),
            c,
        )

    def chi0(self, P) -> tuple[int, int, int]:
        return normalize(self._row(*P), self.ctx)

    def chi0_vector(self, v) -> tuple[int, int, int]:
        return self._row(*v)

    def chi_vector(self, vec) -> tuple[int, ...]:
        """Action on flat Sigma vectors (F_q-linear, unnormalised)."""
        return flatten(self.ctx, self._row(*unflatten(self.ctx, vec)))

    def chi(self, vec) -> tuple[int, ...]:
        return normalize(self.chi_vector(vec), self.ctx)

    def chi_subspace(self, S: Subspace) -> Subspace:
        return Subspace.from_vectors(S.ctx, [self.chi_vector(r) for r in S.rows], S.level, S.length)

    def chi_star_vector(self, v) -> tuple[int, ...]:
        F, n = self.ctx, self.ctx.n
        c = v[2 * n]
        out_a, out_b = [], []
        for i in range(n):
            ai, bi = v[i], v[n + i]
            fr = lambda x: F.frob(x, i)  # noqa: E731
            out_a.append(F.sum((F.mul(fr(self.x11), ai), F.mul(fr(self.x21), bi), F.mul(fr(self.x31), c))))
            out_b.append(F.sum((F.mul(fr(self.x12), ai), F.mul(fr(self.x22), bi), F.mul(fr(self.x32), c))))
        return tuple(out_a) + tuple(out_b) + (c,)

    def chi_star(self, v) -> tuple[int, ...]:
        return normalize(self.chi_star_vector(v), self.ctx)

    def chi_star_subspace(self, L: Subspace) -> Subspace:
        return Subspace.from_vectors(L.ctx, [self.chi_star_vector(r) for r in L.rows], L.level, L.length)

    def to_json(self) -> list:
        return [[list(self.ctx.coords(x)) for x in row] for row in self.matrix]


def chi_actions(X: StabiliserElt):
    """The three actions (on PG(2, q^n), on Sigma, on Sigma*) of one matrix."""
    return X.chi0, X.chi, X.chi_star


def random_stabiliser(ctx: FieldCtx, rng: random.Random) -> StabiliserElt:
    N = ctx.size
    while True:
        x11, x12, x21, x22 = (rng.randrange(N) for _ in range(4))
        if det(((x11, x12), (x21, x22)), ctx):
            break
    return StabiliserElt(ctx, x11, x12, x21, x22, rng.randrange(N), rng.randrange(N))


def sigma_points(ctx: FieldCtx) -> list[tuple[int, ...]]:
    """All points of Sigma in flat normalised form."""
    from .projective import whole_space

    return whole_space(ctx, 2 * ctx.n + 1).points()
