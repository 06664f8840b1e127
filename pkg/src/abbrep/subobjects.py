"""F_(q^k)-sublines and subplanes of PG(2, q^n), their position with respect to
l_infinity, and the reductions to the canonical forms l_(omega,k), pi_(omega,lambda).

A subline (subplane) is stored through vectors u_0, u_1 (, u_2) whose
F_(q^k)-span gives its points; equality is equality of point sets.  Points of
PG(1, q^n) are handled by the same code with 2-vectors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .abb import StabiliserElt, affine_rep, abb_affine, abb_map
from .gf_tower import FieldCtx
from .linalg import coordinates, det, lincomb, normalize, rank, scale, vsub


class SubobjectError(ValueError):
    pass


def span_points(ctx: FieldCtx, vecs, k: int) -> frozenset:
    """Projective points of the F_(q^k)-span of the given vectors."""
    sub = ctx.subfield(k)
    r = len(vecs)
    out = set()
    for lead in range(r):
        for tail in itertools.product(sub, repeat=r - lead - 1):
            out.add(normalize(lincomb((ctx.one,) + tail, vecs[lead:], ctx), ctx))
    return frozenset(out)


@dataclass(frozen=True)
class Subline:
    level: int
    points: frozenset
    vectors: tuple = dc_field(compare=False)
    ctx: FieldCtx = dc_field(compare=False, repr=False)

    @property
    def tag(self) -> str:
        return classify_vs_linfty(self)

    def to_json(self) -> dict:
        return {"level": self.level, "tag": self.tag,
                "points": [[list(self.ctx.coords(x)) for x in P] for P in sorted(self.points)]}


@dataclass(frozen=True)
class Subplane:
    level: int
    points: frozenset
    vectors: tuple = dc_field(compare=False)
    ctx: FieldCtx = dc_field(compare=False, repr=False)

    @property
    def tag(self) -> str:
        return classify_vs_linfty(self)

    def affine_points(self) -> frozenset:
        return frozenset(P for P in self.points if P[-1] != 0)

    def to_json(self) -> dict:
        return {"level": self.level, "tag": self.tag,
                "vectors": [[list(self.ctx.coords(x)) for x in v] for v in self.vectors]}


def subline_from_vectors(ctx: FieldCtx, u, w, k: int) -> Subline:
    if rank([u, w], ctx) != 2:
        raise SubobjectError("vectors are dependent")
    return Subline(k, span_points(ctx, [tuple(u), tuple(w)], k), (tuple(u), tuple(w)), ctx)


def subplane_from_vectors(ctx: FieldCtx, vecs, k: int) -> Subplane:
    vecs = tuple(tuple(v) for v in vecs)
    if len(vecs) != 3 or rank(vecs, ctx) != 3:
        raise SubobjectError("need three independent vectors")
    return Subplane(k, span_points(ctx, vecs, k), vecs, ctx)


def subline_canonical(ctx: FieldCtx, omega: int, k: int) -> Subline:
    """l_(omega,k) = {(0, 1, omega + t) : t in F_(q^k)} plus (0, 0, 1)."""
    return subline_from_vectors(ctx, (0, ctx.one, omega), (0, 0, ctx.one), k)


def subplane_canonical(ctx: FieldCtx, omega: int, lam: int, k: int = 1) -> Subplane:
    """pi_(omega,lambda), spanned by (1, 0, lambda), (0, 1, omega), (0, 0, 1)."""
    one = ctx.one
    return subplane_from_vectors(ctx, [(one, 0, lam), (0, one, omega), (0, 0, one)], k)


def subline_through(ctx: FieldCtx, P1, P2, P3, k: int) -> Subline:
    """The unique F_(q^k)-subline through three distinct collinear points.

    Write P3 = x P1 + y P2; the subline is spanned over F_(q^k) by x P1 and y P2.
    """
    if len({tuple(P1), tuple(P2), tuple(P3)}) != 3 or rank([P1, P2], ctx) != 2:
        raise SubobjectError("points are not distinct")
    c = coordinates(P3, [P1, P2], ctx)
    if c is None:
        raise SubobjectError("points are not collinear")
    x, y = c
    return subline_from_vectors(ctx, scale(x, P1, ctx), scale(y, P2, ctx), k)


def subplane_through(ctx: FieldCtx, P1, P2, P3, P4, k: int) -> Subplane:
    """The unique F_(q^k)-subplane through four points in general position."""
    if rank([P1, P2, P3], ctx) != 3:
        raise SubobjectError("points are not in general position")
    c = coordinates(P4, [P1, P2, P3], ctx)
    if any(x == 0 for x in c):
        raise SubobjectError("points are not in general position")
    return subplane_from_vectors(ctx, [scale(x, P, ctx) for x, P in zip(c, (P1, P2, P3))], k)


def classify_vs_linfty(obj) -> str:
    ctx = obj.ctx
    on = sum(1 for P in obj.points if P[-1] == 0)
    if isinstance(obj, Subline):
        if on == 0:
            return "external"
        if on == len(obj.points):
            return "contained"
        if on == 1:
            return "tangent"
        raise AssertionError("a subline meets l_infinity in 0, 1 or all points")
    if on == 0:
        return "external"
    if on == 1:
        return "tangent"
    if on == ctx.q**obj.level + 1:
        return "secant"
    raise AssertionError("unexpected intersection size with l_infinity")


# -- reductions to canonical form ----------------------------------------------------

def _first_invertible(ctx: FieldCtx, row2) -> tuple[int, int]:
    for u, v in itertools.product(range(ctx.size), repeat=2):
        if det(((u, v), row2), ctx):
            return u, v
    raise AssertionError("second row is zero")


def _reduce_subline(obj: Subline) -> tuple[StabiliserElt, Subline]:
    ctx, k = obj.ctx, obj.level
    pts = sorted(obj.points)
    A = next((affine_rep(ctx, P) for P in pts if P[-1] != 0), None)
    if A is None:
        raise SubobjectError("contained sublines have no canonical form")
    others = [P for P in pts if normalize(A, ctx) != P]
    P, Q = others[0], others[1]
    x, y = coordinates(Q, [P, A], ctx)
    u = scale(ctx.div(x, y), P, ctx)
    omega = u[2]
    if ctx.in_subfield(omega, k):
        # tangent: shift along F_(q^k) so that omega = 0
        u = vsub(u, scale(omega, A, ctx), ctx)
        omega = 0
    alpha, beta, _ = A
    gamma, delta, _ = u
    row2 = (ctx.sub(gamma, ctx.mul(omega, alpha)), ctx.sub(delta, ctx.mul(omega, beta)))
    a, b = _first_invertible(ctx, row2)
    X = StabiliserElt(ctx, a, b, row2[0], row2[1], alpha, beta)
    return X, subline_canonical(ctx, omega, k)


def _span_vectors(ctx: FieldCtx, vecs, k: int):
    """(coefficients, vector) for every nonzero vector of the F_(q^k)-span, in a fixed order."""
    sub = ctx.subfield(k)
    for cs in itertools.product(sub, repeat=len(vecs)):
        if any(cs):
            yield cs, lincomb(cs, vecs, ctx)


def _reduce_subplane(obj: Subplane) -> tuple[StabiliserElt, Subplane]:
    ctx, k = obj.ctx, obj.level
    pts = sorted(obj.points)
    A = next(affine_rep(ctx, P) for P in pts if P[-1] != 0)  # a subplane always has affine points
    nA = normalize(A, ctx)
    vecs = obj.vectors
    v = next(w for _, w in _span_vectors(ctx, vecs, k) if normalize(w, ctx) == nA)
    c = ctx.div(A[2], v[2])
    vecs = [scale(c, w, ctx) for w in vecs]  # now A lies in the span
    kernel = []
    for _, w in _span_vectors(ctx, vecs, k):
        if w[2] == 0 and rank(kernel + [w], ctx) > len(kernel):
            kernel.append(w)
    chosen = kernel[:2]
    for _, w in _span_vectors(ctx, vecs, k):
        if len(chosen) == 2:
            break
        if rank(chosen + [w, A], ctx) == len(chosen) + 2:
            chosen.append(w)
    x1, x2 = chosen
    gamma, delta, lam = x1
    alpha, beta, omega = x2
    eps, zeta, _ = A
    X = StabiliserElt(
        ctx,
        ctx.sub(gamma, ctx.mul(lam, eps)), ctx.sub(delta, ctx.mul(lam, zeta)),
        ctx.sub(alpha, ctx.mul(omega, eps)), ctx.sub(beta, ctx.mul(omega, zeta)),
        eps, zeta,
    )
    return X, subplane_canonical(ctx, omega, lam, k)


def reduce_to_canonical(obj):
    """(X, canonical) with chi_0 of the canonical object equal to obj."""
    if isinstance(obj, Subline):
        return _reduce_subline(obj)
    return _reduce_subplane(obj)


def canonical_parameters(obj) -> dict:
    X, can = reduce_to_canonical(obj)
    if isinstance(obj, Subline):
        return {"omega": can.vectors[0][2]}
    return {"omega": can.vectors[1][2], "lambda": can.vectors[0][2]}


def smallest_containing_degree(obj) -> int:
    """Level of the smallest tangent subline (secant subplane) containing obj."""
    ctx = obj.ctx
    if isinstance(obj, Subline):
        if obj.tag == "contained":
            raise SubobjectError("subline is contained in l_infinity")
    elif obj.tag != "tangent":
        raise SubobjectError("defined for tangent subplanes only")
    omega = canonical_parameters(obj)["omega"]
    d = ctx.subfield_degree(omega)
    return obj.level * d // math.gcd(obj.level, d)


# -- images under the ABB map -------------------------------------------------------

def abb_image(ctx: FieldCtx, points, affine_only: bool = False) -> frozenset:
    """Sigma points of the ABB image of a set of points of PG(2, q^n)."""
    out = set()
    for P in points:
        if P[2] != 0:
            out.add(normalize(abb_affine(ctx, P), ctx))
        elif not affine_only:
            out.update(abb_map(ctx, P).points())
    return frozenset(out)


def random_point(ctx: FieldCtx, rng, affine: bool | None = None) -> tuple[int, int, int]:
    N = ctx.size
    while True:
        v = (rng.randrange(N), rng.randrange(N), rng.randrange(N))
        if not any(v):
            continue
        P = normalize(v, ctx)
        if affine is None or (P[2] != 0) == affine:
            return P


def random_linfty_point(ctx: FieldCtx, rng) -> tuple[int, int, int]:
    while True:
        a, b = rng.randrange(ctx.size), rng.randrange(ctx.size)
        if a or b:
            return normalize((a, b, 0), ctx)
