"""Exact enumerations behind the counting arguments, each compared with its closed form."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from ..abb import abb_affine, iota_vector, sigma_vec
from ..curves import (apply_psi, c_omega, descend_curve, extend_curve, nrc_through, pgl2,
                      CurveError)
from ..gf_tower import FieldCtx
from ..linalg import normalize, rank
from ..projective import flatten, h_infinity, meet
from ..spread import (conjugate_generator, conjugate_points, element_of_subspace, element_through,
                      indicator_set)
from ..subobjects import (SubobjectError, subline_canonical, subplane_through,
                          subline_through)
from .report import HypothesisError, UsageError

CENSUS_KINDS = ("external-triples", "tangent-flats", "scroll-curves", "allowable-B", "tangent-per-subline")


@dataclass
class CensusResult:
    kind: str
    params: dict
    computed: int
    formula: int
    extra: dict = field(default_factory=dict)
    consistent: bool = True
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.computed == self.formula and self.consistent

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params, "computed": self.computed,
                "formula": self.formula, "extra": self.extra, "verdict": self.verdict,
                "elapsed_ms": self.elapsed_ms}


def census_hypotheses(kind: str, ctx: FieldCtx, k: int | None = None) -> None:
    if kind not in CENSUS_KINDS:
        raise UsageError(f"unknown census kind {kind!r}; choose from {', '.join(CENSUS_KINDS)}")
    if kind == "tangent-flats" and k is not None and ctx.n % k:
        raise HypothesisError(f"k={k} does not divide n={ctx.n}")
    if kind in ("scroll-curves", "allowable-B"):
        if ctx.n < 3:
            raise HypothesisError("needs omega outside F_(q^2), so n >= 3")
        if ctx.q < ctx.n:
            raise HypothesisError("needs q >= n")
    if kind == "tangent-per-subline" and ctx.n < 2:
        raise HypothesisError("needs n >= 2")


def census_feasible(kind: str, ctx: FieldCtx, k: int | None = None) -> bool:
    Q = ctx.size
    try:
        census_hypotheses(kind, ctx, k)
    except HypothesisError:
        return False
    if kind == "external-triples":
        return Q <= 81
    if kind == "tangent-flats":
        kk = 1 if k is None else k
        return Q * Q * (Q * Q - 1) // (ctx.q**kk - 1) <= 300000
    if kind in ("scroll-curves", "allowable-B"):
        return Q <= 64
    return Q * Q <= 10000


def census(kind: str, ctx: FieldCtx, k: int | None = None) -> CensusResult:
    census_hypotheses(kind, ctx, k)
    t0 = time.perf_counter()
    fn = {
        "external-triples": _external_triples,
        "tangent-flats": _tangent_flats,
        "scroll-curves": _scroll_curves,
        "allowable-B": _allowable_b,
        "tangent-per-subline": _tangent_per_subline,
    }[kind]
    res = fn(ctx, k)
    res.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return res


def _params(ctx, k=None):
    return {"p": ctx.p, "h": ctx.h, "n": ctx.n, "q": ctx.q, "k": k}


def _external_triples(ctx, k):
    """Non-collinear triples of affine points in the n-space phi(a = 0), against external F_q-sublines."""
    one = ctx.one
    line = [(0, b, one) for b in range(ctx.size)]
    img = [normalize(abb_affine(ctx, P), ctx) for P in line]
    noncollinear, external = set(), set()
    for t in itertools.combinations(range(ctx.size), 3):
        if rank([img[j] for j in t], ctx) == 3:
            noncollinear.add(t)
        if subline_through(ctx, *(line[j] for j in t), 1).tag == "external":
            external.add(t)
    Q = ctx.size
    formula = Q * (Q - 1) * (Q - ctx.q) // 6
    return CensusResult("external-triples", _params(ctx), len(noncollinear), formula,
                        {"external_subline_triples": len(external)}, noncollinear == external)


def _tangent_flats(ctx, k):
    from .line_checks import _tangent_sublines, tangent_flats, tangent_subline_count

    k = 1 if k is None else k
    flats = tangent_flats(ctx, k)
    lines = _tangent_sublines(ctx, k)
    return CensusResult("tangent-flats", _params(ctx, k), len(flats), tangent_subline_count(ctx, k),
                        {"tangent_sublines": len(lines)}, len(lines) == len(flats))


# -- the scroll censuses ------------------------------------------------------------------

def _scroll_setup(ctx):
    omega = ctx.generator
    C = c_omega(ctx, omega)
    Cs = extend_curve(C)
    k = ctx.subfield_degree(omega)
    E1 = element_of_subspace(ctx, meet(C.span(), h_infinity(ctx)), k)
    ind = indicator_set(ctx, k)
    Qpts = {ind.which(P): Cs.param_of(P) for P in conjugate_points(ctx, E1)}
    E = element_through(ctx, flatten(ctx, (ctx.one, 0, 0)), ctx.n)
    return omega, k, C, Cs, Qpts, ind, E


def _n_ab(ctx, k, A, B):
    """N*_(AB) through A, B and the conjugate points R, ..., R^(sigma^(k-1)) of the D_k element of A."""
    E2 = element_through(ctx, A, k)
    w0 = conjugate_generator(ctx, E2)
    vs = [sigma_vec(ctx, w0, j) for j in range(k)]
    try:
        Ns = nrc_through(ctx, vs + [iota_vector(ctx, A), iota_vector(ctx, B)], ctx.n)
    except CurveError:
        return None, E2
    return Ns, E2


def _scroll_exists(ctx, k, Qparams, ind, A, B, G):
    Ns, E2 = _n_ab(ctx, k, A, B)
    if Ns is None:
        return None
    N = descend_curve(ctx, Ns)
    if N is None:
        return None
    Next = extend_curve(N)
    R = {ind.which(P): P for P in conjugate_points(ctx, E2)}
    for psi in G:
        if all(Next.point_at(*apply_psi(ctx, psi, Qparams[j])) == R[j] for j in range(k)):
            return N
    return None


def _points_of(E):
    return E.subspace.points()


def _scroll_curves(ctx, k_arg):
    omega, k, C, Cs, Qp, ind, E = _scroll_setup(ctx)
    G = pgl2(ctx)
    curves = set()
    for A in _points_of(E):
        E2 = element_through(ctx, A, k)
        for B in _points_of(E2):
            if B == A:
                continue
            N = _scroll_exists(ctx, k, Qp, ind, A, B, G)
            if N is not None:
                curves.add(N.point_set())
    formula = (ctx.size - 1) // (ctx.q - 1)
    return CensusResult("scroll-curves", _params(ctx, k), len(curves), formula,
                        {"omega": list(ctx.coords(omega))})


def _allowable_b(ctx, k_arg):
    omega, k, C, Cs, Qp, ind, E = _scroll_setup(ctx)
    G = pgl2(ctx)
    A = _points_of(E)[0]
    E2 = element_through(ctx, A, k)
    count = sum(1 for B in _points_of(E2) if B != A and _scroll_exists(ctx, k, Qp, ind, A, B, G) is not None)
    return CensusResult("allowable-B", _params(ctx, k), count, ctx.q * (ctx.q + 1),
                        {"omega": list(ctx.coords(omega))})


def _tangent_per_subline(ctx, k_arg):
    """F_q-subplanes through l_(omega,1) and R = (1, 0, 0), found from every fourth point."""
    one = ctx.one
    omega = ctx.generator
    m = subline_canonical(ctx, omega, 1)
    P1, P2, P3 = sorted(m.points)[:3]
    R = (one, 0, 0)
    found = set()
    tangent = True
    for a in range(ctx.size):
        for b in range(ctx.size):
            X = (a, b, one)
            try:
                mu = subplane_through(ctx, P1, P2, R, X, 1)
            except SubobjectError:
                continue
            if m.points <= mu.points:
                found.add(mu.points)
                tangent &= mu.tag == "tangent"
    # the same family from the vectors (u, w, c (1, 0, 0)), c in F_(q^n)^*
    u, w = m.vectors
    direct = {subplane_canonical_like(ctx, u, w, c) for c in range(1, ctx.size)}
    formula = (ctx.size - 1) // (ctx.q - 1)
    return CensusResult("tangent-per-subline", _params(ctx), len(found), formula,
                        {"from_scalars": len(direct)}, tangent and direct == found)


def subplane_canonical_like(ctx, u, w, c):
    from ..subobjects import subplane_from_vectors

    return subplane_from_vectors(ctx, [u, w, (c, 0, 0)], 1).points
