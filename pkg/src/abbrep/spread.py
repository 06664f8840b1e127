"""Field reduction, the Desarguesian spread D of H_infinity, its subspreads
D_k, reguli and indicator sets."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .abb import iota_vector, sigma_vec, trace_on_sigma
from .gf_tower import FieldCtx
from .linalg import coordinates, lincomb, normalize, rank
from .projective import Subspace, flatten, span, unflatten


def coset_rep(ctx: FieldCtx, x: int, k: int) -> int:
    """Representative of x * F_(q^k)^*: g^(log x mod (q^n-1)/(q^k-1))."""
    M = (ctx.size - 1) // (ctx.q**k - 1)
    return ctx.exp_table[ctx.log_table[x] % M]


def canonical_params(ctx: FieldCtx, a: int, b: int, k: int) -> tuple[int, int]:
    """(a, b) scaled by F_(q^k)^* so its first nonzero entry is a fixed coset representative."""
    if a == 0 and b == 0:
        raise ValueError("(a, b) = (0, 0) defines no spread element")
    lead = a if a else b
    lam = ctx.div(coset_rep(ctx, lead, k), lead)
    return ctx.mul(a, lam), ctx.mul(b, lam)


@dataclass(frozen=True)
class SpreadElt:
    """{(ax, bx, 0) : x in F_(q^k)^*}, a (k-1)-flat of H_infinity."""

    a: int
    b: int
    k: int
    subspace: Subspace = dc_field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def points(self) -> list[tuple[int, ...]]:
        return self.subspace.points()

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"a": list(ctx.coords(self.a)), "b": list(ctx.coords(self.b)), "k": self.k,
                "generators": self.subspace.to_json()}


def spread_element(ctx: FieldCtx, a: int, b: int, k: int) -> SpreadElt:
    if ctx.n % k:
        raise ValueError(f"k={k} does not divide n={ctx.n}")
    a, b = canonical_params(ctx, a, b, k)
    gens = [flatten(ctx, (ctx.mul(a, x), ctx.mul(b, x), 0)) for x in ctx.subfield_basis(k)]
    return SpreadElt(a, b, k, Subspace.from_vectors(ctx, gens))


def element_through(ctx: FieldCtx, vec, k: int) -> SpreadElt:
    """The element of D_k containing the point vec of H_infinity."""
    a, b, c = unflatten(ctx, vec)
    if c != 0:
        raise ValueError("point is not in H_infinity")
    return spread_element(ctx, a, b, k)


def element_of_subspace(ctx: FieldCtx, S: Subspace, k: int) -> SpreadElt | None:
    """The D_k element equal to S, or None when S is not one."""
    if S.dim != k - 1 or not S.rows:
        return None
    E = element_through(ctx, S.rows[0], k)
    return E if E.subspace == S else None


def spread_elements(ctx: FieldCtx, k: int) -> list[SpreadElt]:
    """Every element of D_k, in canonical-parameter order."""
    M = (ctx.size - 1) // (ctx.q**k - 1)
    reps = [ctx.exp_table[i] for i in range(M)]
    params = [(0, r) for r in reps] + [(r, b) for r in reps for b in range(ctx.size)]
    return [spread_element(ctx, a, b, k) for a, b in params]


def field_reduce(ctx: FieldCtx, P, r: int) -> Subspace:
    """The (n-1)-flat of PG(rn-1, q) given by the point P of PG(r-1, q^n)."""
    if len(P) != r or r not in (1, 2, 3):
        raise ValueError("r must be 1, 2 or 3 and match the point length")
    if not any(P):
        raise ValueError("zero vector")
    gens = []
    for x in ctx.fq_basis:
        gens.append(tuple(c for y in P for c in ctx.fq_coords(ctx.mul(x, y))))
    return Subspace.from_vectors(ctx, gens, 1, r * ctx.n)


# -- reguli --------------------------------------------------------------------------

def regulus_through(E1: Subspace, E2: Subspace, E3: Subspace) -> list[Subspace]:
    """The regulus through three pairwise disjoint (t-1)-flats spanning a (2t-1)-flat.

    With W = E1 + E2, E3 is the graph {x + f(x)} of an isomorphism f: E1 -> E2;
    the regulus is {E1, E2} together with the graphs of lambda*f, lambda in F_q^*.
    """
    ctx = E1.ctx
    t = len(E1.rows)
    if len(E2.rows) != t or len(E3.rows) != t:
        raise ValueError("flats of different dimensions")
    W = span(E1, E2)
    if len(W.rows) != 2 * t or rank(W.rows + E3.rows, ctx) != 2 * t:
        raise ValueError("flats must be pairwise disjoint and span a (2t-1)-flat")
    for X, Y in ((E1, E3), (E2, E3)):
        if rank(X.rows + Y.rows, ctx) != 2 * t:
            raise ValueError("flats must be pairwise disjoint")
    basis = E1.rows + E2.rows
    xs, zs = [], []
    for y in E3.rows:
        c = coordinates(y, basis, ctx)
        xs.append(lincomb(c[:t], E1.rows, ctx))
        zs.append(lincomb(c[t:], E2.rows, ctx))
    out = [E1]
    for lam in ctx.subfield(1):
        if lam:
            gens = [lincomb((ctx.one, lam), (x, z), ctx) for x, z in zip(xs, zs)]
            out.append(Subspace.from_vectors(ctx, gens, E1.level, E1.length))
    out.append(E2)
    return out


# -- indicator sets ----------------------------------------------------------------

@dataclass(frozen=True)
class IndicatorSet:
    """The k conjugate flats Pi, Pi^sigma, ..., Pi^(sigma^(k-1)) in H_infinity*."""

    k: int
    flats: tuple[Subspace, ...]

    def which(self, vec) -> int | None:
        """Index j of the flat containing the Sigma* point, or None."""
        for j, L in enumerate(self.flats):
            if L.contains(vec):
                return j
        return None


def indicator_set(ctx: FieldCtx, k: int) -> IndicatorSet:
    """Pi^(sigma^j) is spanned by the a- and b-unit vectors at positions congruent to j mod k.

    For k = n these are the transversal lines nu^(sigma^j).
    """
    n = ctx.n
    if n % k:
        raise ValueError(f"k={k} does not divide n={n}")
    L = 2 * n + 1

    def unit(i):
        return tuple(ctx.one if j == i else 0 for j in range(L))

    flats = []
    for j in range(k):
        gens = [unit(i) for i in range(j, n, k)] + [unit(n + i) for i in range(j, n, k)]
        flats.append(Subspace.from_vectors(ctx, gens, n, L))
    return IndicatorSet(k, tuple(flats))


def transversal_lines(ctx: FieldCtx) -> list[Subspace]:
    return list(indicator_set(ctx, ctx.n).flats)


def conjugate_generator(ctx: FieldCtx, E: SpreadElt) -> tuple[int, ...]:
    """Vector w_0 in Pi whose conjugates w_0, ..., w_0^(sigma^(k-1)) span the extension of E."""
    n, k = ctx.n, E.k
    v = [0] * (2 * n + 1)
    for i in range(0, n, k):
        v[i] = ctx.frob(E.a, i)
        v[n + i] = ctx.frob(E.b, i)
    return tuple(v)


def conjugate_points(ctx: FieldCtx, E: SpreadElt) -> list[tuple[int, ...]]:
    w = conjugate_generator(ctx, E)
    return [normalize(sigma_vec(ctx, w, j), ctx) for j in range(E.k)]


def extension_span(ctx: FieldCtx, E: SpreadElt) -> Subspace:
    """<P, P^sigma, ..., P^(sigma^(k-1))> for the conjugate points generating E."""
    w = conjugate_generator(ctx, E)
    return Subspace.from_vectors(ctx, [sigma_vec(ctx, w, j) for j in range(E.k)], ctx.n)


def indicator_consistent(ctx: FieldCtx, E: SpreadElt) -> bool:
    """The span of the conjugate points meets iota(Sigma) exactly in E, and each lies in its flat."""
    ind = indicator_set(ctx, E.k)
    pts = conjugate_points(ctx, E)
    if any(ind.which(P) != j for j, P in enumerate(pts)):
        return False
    return trace_on_sigma(extension_span(ctx, E)) == E.subspace


def element_extension(ctx: FieldCtx, E: SpreadElt) -> Subspace:
    """iota-extension of E as an F_(q^n) flat (spanned by iota of its generators)."""
    return Subspace.from_vectors(ctx, [iota_vector(ctx, r) for r in E.subspace.rows], ctx.n)
