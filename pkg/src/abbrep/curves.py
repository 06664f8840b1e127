"""Arcs, normal rational curves, their F_(q^n)-extensions, normal rational
scrolls and the Veronese-type image of an external subplane.

A curve of degree k is stored through vectors e_0..e_k with
rho(s, t) = sum_i s^(k-i) t^i e_i; ``param_level`` is the degree over F_q of
the parameter field and ``ambient_level`` that of the scalars of the
ambient space (1 for Sigma, n for Sigma*).  Curves compare by point set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .abb import iota_vector, sigma_apply, sigma_vec
from .gf_tower import FieldCtx
from .linalg import coordinates, lincomb, mat_inv, normalize, rank
from .projective import Subspace, flatten
from .spread import indicator_set


class CurveError(ValueError):
    pass


# -- homogeneous binary forms as coefficient lists [c_0, ..., c_d] of s^(d-m) t^m ----

def form_mul_linear(F: FieldCtx, poly, a: int, b: int):
    """poly * (a s + b t)."""
    out = [0] * (len(poly) + 1)
    for m, c in enumerate(poly):
        if c:
            out[m] = F.add(out[m], F.mul(c, a))
            out[m + 1] = F.add(out[m + 1], F.mul(c, b))
    return out


def form_product(F: FieldCtx, linears):
    poly = [F.one]
    for a, b in linears:
        poly = form_mul_linear(F, poly, a, b)
    return poly


def param_line(ctx: FieldCtx, level: int) -> list[tuple[int, int]]:
    """Points of PG(1, q^level) as (s, t): (1, t) for every t, then (0, 1)."""
    return [(ctx.one, t) for t in ctx.subfield(level)] + [(0, ctx.one)]


@dataclass(frozen=True, eq=False)
class Curve:
    ctx: FieldCtx = dc_field(repr=False)
    vectors: tuple
    param_level: int = 1
    ambient_level: int = 1

    def __post_init__(self):
        if rank(self.vectors, self.ctx) != len(self.vectors):
            raise CurveError("parametrising vectors are dependent")

    @property
    def degree(self) -> int:
        return len(self.vectors) - 1

    def vector_at(self, s: int, t: int) -> tuple[int, ...]:
        F, k = self.ctx, self.degree
        coeffs = [F.mul(F.pow(s, k - i), F.pow(t, i)) for i in range(k + 1)]
        return lincomb(coeffs, self.vectors, F)

    def point_at(self, s: int, t: int) -> tuple[int, ...]:
        return normalize(self.vector_at(s, t), self.ctx)

    def params(self) -> list[tuple[int, int]]:
        return param_line(self.ctx, self.param_level)

    def points(self) -> list[tuple[int, ...]]:
        return [self.point_at(s, t) for s, t in self.params()]

    def point_set(self) -> frozenset:
        cached = self.__dict__.get("_pts")
        if cached is None:
            cached = frozenset(self.points())
            object.__setattr__(self, "_pts", cached)
        return cached

    def span(self) -> Subspace:
        return Subspace.from_vectors(self.ctx, self.vectors, self.ambient_level)

    def param_of(self, P) -> tuple[int, int] | None:
        P = normalize(P, self.ctx)
        for s, t in self.params():
            if self.point_at(s, t) == P:
                return s, t
        return None

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.ambient_level == other.ambient_level and self.point_set() == other.point_set()

    def __hash__(self):
        return hash((self.ambient_level, self.point_set()))

    def to_json(self) -> dict:
        return {"degree": self.degree, "param_level": self.param_level,
                "vectors": [list(v) for v in self.vectors]}


def curve_points(C: Curve) -> list[tuple[int, ...]]:
    return C.points()


def is_arc(ctx: FieldCtx, points, k: int) -> bool:
    """Every k+1 of the points are independent."""
    points = [tuple(P) for P in points]
    if len(points) <= k + 1:
        return rank(points, ctx) == len(points)
    return all(rank(sub, ctx) == k + 1 for sub in itertools.combinations(points, k + 1))


def no_three_collinear(ctx: FieldCtx, points) -> bool:
    return all(rank(t, ctx) == 3 for t in itertools.combinations(list(points), 3))


def nrc_through(ctx: FieldCtx, points, level: int = 1) -> Curve:
    """The normal rational curve through k+3 points in general position in a k-space.

    With u_0..u_k the first k+1 points and a = sum a_i u_i, b = sum b_i u_i the
    last two, rho(s, t) = sum_i a_i b_i prod_(j != i) (a_j s - b_j t) u_i;
    u_j sits at (b_j, a_j), a at (0, 1) and b at (1, 0).
    """
    points = [tuple(P) for P in points]
    k = rank(points, ctx) - 1
    if len(points) != k + 3:
        raise CurveError(f"need k+3 = {k + 3} points spanning a {k}-space, got {len(points)}")
    if k + 2 > ctx.q**level:
        raise CurveError(f"k + 2 = {k + 2} exceeds the field order {ctx.q ** level}")
    if not is_arc(ctx, points, k):
        raise CurveError("points are not in general position")
    u = points[: k + 1]
    a = coordinates(points[k + 1], u, ctx)
    b = coordinates(points[k + 2], u, ctx)
    forms = []
    for i in range(k + 1):
        poly = form_product(ctx, [(a[j], ctx.neg(b[j])) for j in range(k + 1) if j != i])
        w = ctx.mul(a[i], b[i])
        forms.append([ctx.mul(w, c) for c in poly])
    vectors = tuple(lincomb([forms[i][m] for i in range(k + 1)], u, ctx) for m in range(k + 1))
    return Curve(ctx, vectors, level, level)


def _frame_curve(ctx: FieldCtx, pts, k: int, level: int) -> Curve:
    """A parametrisation of q'+1 points in general position spanning a k-space, k in {q'-1, q'}."""
    sub = ctx.subfield(level)
    Q = len(sub)
    fin, inf = pts[:Q], pts[Q]
    V = [[ctx.pow(t, m) for m in range(Q)] for t in sub]
    W = mat_inv(V, ctx)
    if k == Q:
        rhs = [lincomb((ctx.one, ctx.neg(ctx.pow(t, k))), (p, inf), ctx) for t, p in zip(sub, fin)]
        vecs = [lincomb(W[m], rhs, ctx) for m in range(Q)] + [inf]
    else:
        c = coordinates(inf, fin, ctx)
        lam = [ctx.div(c[j], W[k][j]) for j in range(Q)]
        rhs = [tuple(ctx.mul(l, x) for x in p) for l, p in zip(lam, fin)]
        vecs = [lincomb(W[m], rhs, ctx) for m in range(k + 1)]
    return Curve(ctx, tuple(vecs), level, level)


def fit_nrc(ctx: FieldCtx, points, level: int = 1) -> Curve | None:
    """A normal rational curve with exactly this point set, or None."""
    pts = sorted(set(tuple(P) for P in points))
    Q = ctx.q**level
    if len(pts) != Q + 1:
        return None
    k = rank(pts, ctx) - 1
    if k < 1 or k > Q:
        return None
    if k == 1:
        L = Subspace.from_vectors(ctx, pts[:2], level)
        if len(L.points()) != Q + 1 or not all(L.contains(P) for P in pts):
            return None
        return Curve(ctx, L.rows, level, level)
    if not is_arc(ctx, pts, k):
        return None
    if k + 2 <= Q:
        C = nrc_through(ctx, pts[: k + 3], level)
    else:
        C = _frame_curve(ctx, pts, k, level)
    return C if C.point_set() == frozenset(pts) else None


def extend_curve(C: Curve) -> Curve:
    """F_(q^n)-extension of a curve of Sigma: iota of its vectors, parameters over F_(q^n)."""
    ctx = C.ctx
    if C.ambient_level != 1:
        raise CurveError("only curves of Sigma can be extended")
    return Curve(ctx, tuple(iota_vector(ctx, v) for v in C.vectors), ctx.n, ctx.n)


def extension_through(ctx: FieldCtx, C: Curve, extra) -> Curve | None:
    """The NRC of Sigma* through iota(C) and the given extra points, if one exists."""
    from .abb import embed_iota

    pts = [embed_iota(ctx, P) for P in C.points()] + [tuple(P) for P in extra]
    k = C.degree
    if k == 1:
        L = Subspace.from_vectors(ctx, pts[:2], ctx.n)
        return Curve(ctx, L.rows, ctx.n, ctx.n) if all(L.contains(P) for P in pts) else None
    try:
        D = nrc_through(ctx, pts[: k + 3], ctx.n)
    except CurveError:
        return None
    S = D.point_set()
    return D if all(normalize(P, ctx) in S for P in pts) else None


# -- the curves C_omega and N_omega -----------------------------------------------------

def conjugates(ctx: FieldCtx, omega: int) -> list[int]:
    return [ctx.frob(omega, i) for i in range(ctx.subfield_degree(omega))]


def c_omega(ctx: FieldCtx, omega: int) -> Curve:
    """phi(l_(omega,1)) with rho(s, t) = (0, s prod_(i>=1) (w^(q^i) s + t), prod_(i>=0) (w^(q^i) s + t))."""
    conj = conjugates(ctx, omega)
    k = len(conj)
    if k == 1:
        raise CurveError("omega in F_q gives a tangent subline")
    b = form_mul_linear(ctx, form_product(ctx, [(c, ctx.one) for c in conj[1:]]), ctx.one, 0)
    c = form_product(ctx, [(x, ctx.one) for x in conj])
    vecs = tuple(flatten(ctx, (0, b[m], c[m])) for m in range(k + 1))
    return Curve(ctx, vecs)


def n_omega(ctx: FieldCtx, omega: int) -> Curve:
    """rho(s, t) = (prod_(i>=1) (w^(q^i) s + t), 0, 0), a curve of degree k-1 in H_infinity."""
    conj = conjugates(ctx, omega)
    a = form_product(ctx, [(c, ctx.one) for c in conj[1:]])
    return Curve(ctx, tuple(flatten(ctx, (x, 0, 0)) for x in a))


def indicator_intersection(Cstar: Curve, k: int) -> list[tuple[tuple[int, ...], int | None]]:
    """Points of C* in H_infinity*, each with the index of the D_k indicator flat containing it."""
    ctx = Cstar.ctx
    ind = indicator_set(ctx, k)
    out = []
    for P in Cstar.points():
        if P[-1] == 0:
            out.append((P, ind.which(P)))
    return out


def is_conjugate_orbit(ctx: FieldCtx, points) -> bool:
    """The points form one sigma-orbit."""
    pts = set(points)
    if not pts:
        return False
    P = next(iter(pts))
    orbit = {P}
    Q = sigma_apply(ctx, P)
    while Q != P:
        orbit.add(Q)
        Q = sigma_apply(ctx, Q)
    return orbit == pts


def point_to_sigma(ctx: FieldCtx, v) -> tuple[int, ...] | None:
    """Flat Sigma vector of the Sigma* point v, or None when v is not sigma-fixed."""
    from .abb import iota_inverse

    n = ctx.n
    for c in ctx.fq_basis:
        w = tuple(ctx.mul(c, x) for x in v)
        tr = w
        for j in range(1, n):
            s = sigma_vec(ctx, w, j)
            tr = tuple(ctx.add(x, y) for x, y in zip(tr, s))
        if any(tr):
            if rank([tr, v], ctx) != 1:
                return None
            return normalize(iota_inverse(ctx, tr), ctx)
    return None


def descend_curve(ctx: FieldCtx, C: Curve) -> Curve | None:
    """The curve of Sigma whose extension is C, when C is defined over F_q."""
    v0 = next(v for v in C.vectors if any(v))
    for c in range(1, ctx.size):
        w = tuple(ctx.mul(c, x) for x in v0)
        if sigma_vec(ctx, w) == w:
            break
    else:
        return None
    from .abb import iota_inverse

    out = []
    for v in C.vectors:
        w = tuple(ctx.mul(c, x) for x in v)
        if sigma_vec(ctx, w) != w:
            return None
        out.append(iota_inverse(ctx, w))
    return Curve(ctx, tuple(out))


# -- PGL(2, q) and reparametrisation -----------------------------------------------

def pgl2(ctx: FieldCtx, level: int = 1) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    sub = ctx.subfield(level)
    out = []
    for a, b, c, d in itertools.product(sub, repeat=4):
        if ctx.sub(ctx.mul(a, d), ctx.mul(b, c)) == 0:
            continue
        lead = next(x for x in (a, b, c, d) if x)
        if lead == ctx.one:
            out.append(((a, b), (c, d)))
    return out


def apply_psi(ctx: FieldCtx, psi, x) -> tuple[int, int]:
    """(s, t) -> (s, t) M, normalised."""
    (a, b), (c, d) = psi
    s, t = x
    return normalize((ctx.add(ctx.mul(s, a), ctx.mul(t, c)), ctx.add(ctx.mul(s, b), ctx.mul(t, d))), ctx)


def psi_mul(ctx: FieldCtx, A, B):
    M = tuple(tuple(ctx.sum(ctx.mul(A[i][l], B[l][j]) for l in range(2)) for j in range(2)) for i in range(2))
    lead = next(x for row in M for x in row if x)
    il = ctx.inv(lead)
    return tuple(tuple(ctx.mul(il, x) for x in row) for row in M)


def psi_inv(ctx: FieldCtx, A):
    M = mat_inv(A, ctx)
    lead = next(x for row in M for x in row if x)
    il = ctx.inv(lead)
    return tuple(tuple(ctx.mul(il, x) for x in row) for row in M)


def reparametrize(C: Curve, psi) -> Curve:
    """The curve with rho'(s, t) = rho((s, t) psi); same point set."""
    F, k = C.ctx, C.degree
    (a, b), (c, d) = psi
    vecs = []
    forms = [form_product(F, [(a, c)] * (k - i) + [(b, d)] * i) for i in range(k + 1)]
    for m in range(k + 1):
        vecs.append(lincomb([forms[i][m] for i in range(k + 1)], C.vectors, F))
    return Curve(F, tuple(vecs), C.param_level, C.ambient_level)


# -- scrolls ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scroll:
    C1: Curve
    C2: Curve
    psi: tuple

    @property
    def ctx(self) -> FieldCtx:
        return self.C1.ctx

    def line_at(self, x) -> Subspace:
        F = self.ctx
        y = apply_psi(F, self.psi, x)
        return Subspace.from_vectors(F, [self.C1.vector_at(*x), self.C2.vector_at(*y)], self.C1.ambient_level)

    def lines(self) -> list[Subspace]:
        return [self.line_at(x) for x in self.C1.params()]

    def point_set(self) -> frozenset:
        return frozenset(P for L in self.lines() for P in L.points())

    def affine_points(self) -> frozenset:
        return frozenset(P for P in self.point_set() if P[-1] != 0)

    def extension(self) -> "Scroll":
        return Scroll(extend_curve(self.C1), extend_curve(self.C2), self.psi)

    def line_set(self) -> frozenset:
        return frozenset(self.lines())

    def to_json(self) -> dict:
        F = self.ctx
        return {"C1": self.C1.to_json(), "C2": self.C2.to_json(),
                "psi": [[list(F.coords(x)) for x in row] for row in self.psi]}


def scroll_build(C1: Curve, C2: Curve, psi) -> Scroll:
    F = C1.ctx
    if rank(C1.vectors + C2.vectors, F) != len(C1.vectors) + len(C2.vectors):
        raise CurveError("curves must span disjoint subspaces")
    return Scroll(C1, C2, tuple(tuple(r) for r in psi))


def in_f_q2_extension(ctx: FieldCtx, x) -> bool:
    """The parameter (s, t) is defined over F_(q^2) (intersected with F_(q^n))."""
    s, t = x
    if s == 0 or t == 0:
        return True
    r = ctx.div(s, t)
    return 2 % ctx.subfield_degree(r) == 0


def matching_psis(ctx: FieldCtx, x, y) -> list:
    """Every psi in PGL(2, q) with x psi = y."""
    y = normalize(y, ctx)
    return [psi for psi in pgl2(ctx) if apply_psi(ctx, psi, x) == y]


def scroll_match(C1: Curve, C2: Curve, P, Q):
    """The psi (and scroll) for which the scroll's extension contains <P, Q>, or None.

    C1, C2 are curves of Sigma; P lies on the extension of C1 off C1 and off its
    F_(q^2)-extension, Q on the extension of C2 off C2.
    """
    F = C1.ctx
    E1, E2 = extend_curve(C1), extend_curve(C2)
    x, y = E1.param_of(P), E2.param_of(Q)
    if x is None or y is None:
        raise CurveError("points do not lie on the extended curves")
    if in_f_q2_extension(F, x):
        raise CurveError("P lies on the F_(q^2)-extension of C1")
    if F.in_subfield(y[1], 1) and F.in_subfield(y[0], 1):
        raise CurveError("Q lies on C2")
    found = matching_psis(F, x, y)
    if not found:
        return None
    if len(found) > 1:
        raise AssertionError("more than one projectivity matches")
    return found[0], scroll_build(C1, C2, found[0])


def orbit_size(ctx: FieldCtx, x) -> int:
    return len({apply_psi(ctx, psi, x) for psi in pgl2(ctx)})


# -- external subplanes ------------------------------------------------------------------

def fq_independent(ctx: FieldCtx, elems) -> bool:
    return rank([ctx.fq_coords(x) for x in elems], ctx) == len(elems)


def veronese_projection(ctx: FieldCtx, omega: int, lam: int) -> frozenset:
    """Sigma points (s N'(x), u N'(x), N(x)), x = s lam + u omega + t, over (s, t, u) in PG(2, q).

    N is the norm from F_(q^r) = F_q(omega, lam) and N'(x) = N(x)/x.
    """
    if not fq_independent(ctx, [ctx.one, omega, lam]):
        raise CurveError("{1, omega, lambda} must be independent over F_q")
    r = _joint_degree(ctx, omega, lam)
    out = set()
    sub = ctx.subfield(1)
    for s, t, u in _pg2(ctx, sub):
        x = ctx.sum((ctx.mul(s, lam), ctx.mul(u, omega), t))
        Np = ctx.prod(ctx.frob(x, i) for i in range(1, r))
        N = ctx.mul(Np, x)
        out.add(normalize(flatten(ctx, (ctx.mul(s, Np), ctx.mul(u, Np), N)), ctx))
    return frozenset(out)


def _pg2(ctx: FieldCtx, sub):
    one = ctx.one
    for b in sub:
        for c in sub:
            yield one, b, c
    for c in sub:
        yield 0, one, c
    yield 0, 0, one


def _joint_degree(ctx: FieldCtx, omega: int, lam: int) -> int:
    a, b = ctx.subfield_degree(omega), ctx.subfield_degree(lam)
    return a * b // math.gcd(a, b)


def _poly3_mul(ctx, P, Q):
    out = {}
    for e1, c1 in P.items():
        for e2, c2 in Q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = ctx.add(out.get(e, 0), ctx.mul(c1, c2))
    return {e: c for e, c in out.items() if c}


def veronese_vectors(ctx: FieldCtx, omega: int, lam: int) -> dict:
    """Vectors v_(ijm) with S = {sum s^i t^j u^m v_(ijm)}: the expanded form of the map above."""
    r = _joint_degree(ctx, omega, lam)
    one = ctx.one
    Np = {(0, 0, 0): one}
    for i in range(1, r):
        Np = _poly3_mul(ctx, Np, {(1, 0, 0): ctx.frob(lam, i), (0, 1, 0): one, (0, 0, 1): ctx.frob(omega, i)})
    N = _poly3_mul(ctx, Np, {(1, 0, 0): lam, (0, 1, 0): one, (0, 0, 1): omega})
    A = _poly3_mul(ctx, Np, {(1, 0, 0): one})
    B = _poly3_mul(ctx, Np, {(0, 0, 1): one})
    exps = sorted(set(A) | set(B) | set(N))
    return {e: flatten(ctx, (A.get(e, 0), B.get(e, 0), N.get(e, 0))) for e in exps}


def veronese_points(ctx: FieldCtx, vecs: dict) -> frozenset:
    out = set()
    for s, t, u in _pg2(ctx, ctx.subfield(1)):
        coeffs = [ctx.prod((ctx.pow(s, e[0]), ctx.pow(t, e[1]), ctx.pow(u, e[2]))) for e in vecs]
        out.add(normalize(lincomb(coeffs, list(vecs.values()), ctx), ctx))
    return frozenset(out)
