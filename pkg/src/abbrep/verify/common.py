"""Shared helpers for the checks: JSON encodings, sampling and transport."""

from __future__ import annotations

import functools
import math

from ..abb import StabiliserElt, abb_affine, random_stabiliser
from ..curves import Curve
from ..gf_tower import FieldCtx, divisors
from ..linalg import normalize
from ..projective import point_to_json
from ..spread import SpreadElt
from ..subobjects import Subline, Subplane, subline_canonical, subplane_canonical


def ej(ctx: FieldCtx, x: int) -> list:
    return list(ctx.coords(x))


def pj(ctx: FieldCtx, P) -> list:
    """Point of PG(2, q^n) (or PG(1, q^n)) as a list of coordinate arrays."""
    return [ej(ctx, x) for x in P]


def sj(ctx: FieldCtx, vec) -> list:
    return point_to_json(ctx, vec)


def starj(ctx: FieldCtx, v) -> list:
    """Sigma* point as a list of coordinate arrays."""
    return [ej(ctx, x) for x in v]


def elt_json(ctx: FieldCtx, E: SpreadElt) -> dict:
    return {"a": ej(ctx, E.a), "b": ej(ctx, E.b), "k": E.k}


def base_witness(ctx: FieldCtx, **kw) -> dict:
    d = {"field": ctx.spec()}
    d.update(kw)
    return d


@functools.lru_cache(maxsize=None)
def _by_degree(ctx: FieldCtx) -> dict:
    out: dict = {}
    for x in range(ctx.size):
        out.setdefault(ctx.subfield_degree(x), []).append(x)
    return out


def elements_of_degree(ctx: FieldCtx, d: int) -> list[int]:
    """Elements of F_(q^n) generating exactly F_(q^d) over F_q."""
    return _by_degree(ctx).get(d, [])


def elements_outside(ctx: FieldCtx, k: int) -> list[int]:
    return [x for x in range(ctx.size) if not ctx.in_subfield(x, k)]


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def proper_divisors(n: int) -> list[int]:
    return [d for d in divisors(n) if d < n]


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def transport_subline(X: StabiliserElt, obj: Subline) -> Subline:
    from ..subobjects import subline_from_vectors

    ctx = obj.ctx
    u, w = (X.chi0_vector(v) for v in obj.vectors)
    return subline_from_vectors(ctx, u, w, obj.level)


def transport_subplane(X: StabiliserElt, obj: Subplane) -> Subplane:
    from ..subobjects import subplane_from_vectors

    return subplane_from_vectors(obj.ctx, [X.chi0_vector(v) for v in obj.vectors], obj.level)


def transport_curve(X: StabiliserElt, C: Curve) -> Curve:
    """chi applied to a curve of Sigma, keeping its parametrisation."""
    return Curve(C.ctx, tuple(X.chi_vector(v) for v in C.vectors), C.param_level, C.ambient_level)


def random_external_subline(ctx: FieldCtx, rng, level: int, degree: int | None = None):
    """chi_0(l_(omega,level)) for random X and omega outside F_(q^level).

    With ``degree`` set, omega generates F_(q^degree).  Returns (subline, X, omega).
    """
    if degree is None:
        pool = elements_outside(ctx, level)
    else:
        pool = [x for x in elements_of_degree(ctx, degree) if not ctx.in_subfield(x, level)]
    if not pool:
        raise ValueError("no admissible omega")
    omega = rng.choice(pool)
    X = random_stabiliser(ctx, rng)
    return transport_subline(X, subline_canonical(ctx, omega, level)), X, omega


def random_tangent_subplane(ctx: FieldCtx, rng, degree: int | None = None):
    """chi_0(pi_(omega,0)) for random X and omega outside F_q; returns (subplane, X, omega)."""
    pool = elements_outside(ctx, 1) if degree is None else elements_of_degree(ctx, degree)
    if not pool:
        raise ValueError("no admissible omega")
    omega = rng.choice(pool)
    X = random_stabiliser(ctx, rng)
    return transport_subplane(X, subplane_canonical(ctx, omega, 0)), X, omega


def phi_affine(ctx: FieldCtx, points) -> frozenset:
    return frozenset(normalize(abb_affine(ctx, P), ctx) for P in points if P[2] != 0)
