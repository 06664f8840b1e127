"""Exact arithmetic in the tower F_p <= F_q <= F_{q^k} <= F_{q^n}.

Everything lives in one extension F_p[x]/(f) of degree h*n.  Elements are
plain ints: the F_p coordinate vector (c_0, ..., c_{m-1}) in the power basis
1, beta, ..., beta^{m-1} is read as base-p digits with c_0 most significant,
so integer comparison is the lexicographic order on coordinates.
Intermediate fields are subsets, tested with Frobenius fixed points.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

MAX_FIELD_SIZE = 1024


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    # coeffs low-to-high, monic
    return bool(gf_irreducible_p([c % p for c in reversed(coeffs)], p, ZZ))


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    Returned low-to-high with the leading 1 included; the lexicographic order
    runs over the non-leading coefficients (f_0, ..., f_{m-1}).
    """
    for tail in itertools.product(range(p), repeat=m):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible of degree {m} over F_{p}")  # unreachable


class FieldCtx:
    """The field F_{q^n}, q = p^h, with all subfield machinery.

    Arithmetic goes through precomputed tables; elements are ints in
    ``range(self.size)``.  Instances are immutable after construction.
    """

    def __init__(self, p: int, h: int, n: int, irreducible: list[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if h < 1 or n < 1:
            raise ValueError("h and n must be positive")
        self.p, self.h, self.n = p, h, n
        self.q = p**h
        self.m = m = h * n
        self.size = p**m
        if self.size > MAX_FIELD_SIZE:
            raise ValueError(f"field of size {self.size} exceeds desk scale ({MAX_FIELD_SIZE})")
        if irreducible is None:
            irreducible = smallest_irreducible(p, m)
        irreducible = [int(c) % p for c in irreducible]
        if len(irreducible) != m + 1 or irreducible[-1] != 1:
            raise ValueError(f"irreducible must be monic of degree {m} (low-to-high coefficients)")
        if not _is_irreducible(irreducible, p):
            raise ValueError(f"{irreducible} is reducible over F_{p}")
        self.irreducible = tuple(irreducible)
        self._weights = [p ** (m - 1 - i) for i in range(m)]
        self._build_tables()

    # -- construction ---------------------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        """F_p coordinates of x in the basis 1, beta, ..., beta^{m-1}."""
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(reversed(out))

    def from_coords(self, coords) -> int:
        if len(coords) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(coords)}")
        return sum((c % self.p) * w for c, w in zip(coords, self._weights))

    def _poly_mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, m, f = self.p, self.m, self.irreducible
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(m):
                    prod[d - m + i] = (prod[d - m + i] - c * f[i]) % p
        return tuple(prod[:m])

    def _build_tables(self) -> None:
        N, p = self.size, self.p
        coords = [self.coords(x) for x in range(N)]
        self.one = self.from_coords((1,) + (0,) * (self.m - 1))
        self.beta = self.from_coords((0, 1) + (0,) * (self.m - 2)) if self.m > 1 else self.one
        # addition is digitwise mod p
        add = [[0] * N for _ in range(N)]
        for x in range(N):
            cx = coords[x]
            row = add[x]
            for y in range(N):
                row[y] = self.from_coords([(a + b) % p for a, b in zip(cx, coords[y])])
        self.add_table = add
        self.neg_table = [self.from_coords([(-a) % p for a in coords[x]]) for x in range(N)]
        # multiplicative group via a primitive element
        for g in range(1, N):
            exp = [self.one]
            cg = coords[g]
            cur = coords[self.one]
            for _ in range(N - 2):
                cur = self._poly_mul(cur, cg)
                exp.append(self.from_coords(cur))
            if len(set(exp)) == N - 1:
                break
        else:  # pragma: no cover - irreducible guarantees a generator
            raise RuntimeError("no primitive element found")
        self.generator = g
        log = [0] * N
        for i, x in enumerate(exp):
            log[x] = i
        self.exp_table = exp + exp
        self.log_table = log
        mul = [[0] * N for _ in range(N)]
        for x in range(1, N):
            lx = log[x]
            row = mul[x]
            for y in range(1, N):
                row[y] = self.exp_table[lx + log[y]]
        self.mul_table = mul
        self.inv_table = [0] + [exp[(-log[x]) % (N - 1)] for x in range(1, N)]
        self.frob_table = [self.pow(x, self.q) for x in range(N)]

    # -- arithmetic on ints ----------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def sub(self, x: int, y: int) -> int:
        return self.add_table[x][self.neg_table[y]]

    def neg(self, x: int) -> int:
        return self.neg_table[x]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[x]

    def div(self, x: int, y: int) -> int:
        return self.mul_table[x][self.inv(y)]

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return self.one if e == 0 else 0
        return self.exp_table[(self.log_table[x] * e) % (self.size - 1)]

    def scalar(self, c: int) -> int:
        """The prime-field element c * 1."""
        return self.from_coords((c % self.p,) + (0,) * (self.m - 1))

    def sum(self, xs) -> int:
        add = self.add_table
        acc = 0
        for x in xs:
            acc = add[acc][x]
        return acc

    def prod(self, xs) -> int:
        mul = self.mul_table
        acc = self.one
        for x in xs:
            acc = mul[acc][x]
        return acc

    # -- tower structure --------------------------------------------------

    def frob(self, x: int, e: int = 1) -> int:
        """x^(q^e)."""
        e %= self.n
        ft = self.frob_table
        for _ in range(e):
            x = ft[x]
        return x

    def in_subfield(self, x: int, k: int) -> bool:
        return self.frob(x, k) == x

    def subfield_degree(self, x: int) -> int:
        for k in divisors(self.n):
            if self.frob(x, k) == x:
                return k
        raise AssertionError("unreachable: x^(q^n) = x")

    def subfield(self, k: int) -> list[int]:
        if self.n % k:
            raise ValueError(f"k={k} does not divide n={self.n}")
        return [x for x in range(self.size) if self.frob(x, k) == x]

    def norm(self, x: int, k: int) -> int:
        if self.n % k:
            raise ValueError(f"k={k} does not divide n={self.n}")
        if not self.in_subfield(x, k):
            raise ValueError(f"element {x} is not in F_(q^{k})")
        return self.prod(self.frob(x, i) for i in range(k))

    def subfield_basis(self, k: int) -> list[int]:
        """An F_q-basis of F_(q^k): powers of a primitive element of F_(q^k)."""
        if self.n % k:
            raise ValueError(f"k={k} does not divide n={self.n}")
        g = self.pow(self.generator, (self.size - 1) // (self.q**k - 1))
        return [self.pow(g, i) for i in range(k)]

    @property
    def fq_basis(self) -> list[int]:
        """The F_q-basis 1, beta, ..., beta^{n-1} of F_(q^n) used for flat coordinates."""
        return [self.pow(self.beta, i) for i in range(self.n)]

    def _fq_tables(self):
        if not hasattr(self, "_fq_coords"):
            sub = self.subfield(1)
            basis = self.fq_basis
            table = {}
            for cs in itertools.product(sub, repeat=self.n):
                table[self.sum(self.mul(c, b) for c, b in zip(cs, basis))] = cs
            assert len(table) == self.size
            self._fq_coords = [table[x] for x in range(self.size)]
        return self._fq_coords

    def fq_coords(self, x: int) -> tuple[int, ...]:
        """Coordinates of x over F_q in the basis ``fq_basis`` (entries are F_q elements)."""
        return self._fq_tables()[x]

    def from_fq_coords(self, cs) -> int:
        return self.sum(self.mul(c, b) for c, b in zip(cs, self.fq_basis))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, h={self.h}, n={self.n}, irreducible={list(self.irreducible)})"

    # -- serialization ----------------------------------------------------

    def spec(self) -> dict:
        return {"p": self.p, "h": self.h, "n": self.n, "irreducible": list(self.irreducible)}

    @classmethod
    def from_spec(cls, spec: dict) -> "FieldCtx":
        return cls(int(spec["p"]), int(spec.get("h", 1)), int(spec["n"]), spec.get("irreducible"))

    @classmethod
    def from_file(cls, path) -> "FieldCtx":
        return cls.from_spec(json.loads(Path(path).read_text()))

    def elt(self, x) -> "Elt":
        if isinstance(x, Elt):
            return x
        if isinstance(x, (list, tuple)):
            x = self.from_coords(x)
        return Elt(self, int(x))


_CTX_CACHE: dict[tuple, FieldCtx] = {}


def field(p: int, h: int, n: int, irreducible=None) -> FieldCtx:
    """Cached FieldCtx constructor (contexts are immutable, so sharing is safe)."""
    key = (p, h, n, tuple(irreducible) if irreducible else None)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldCtx(p, h, n, irreducible)
    return _CTX_CACHE[key]


@dataclass(frozen=True)
class Elt:
    """A field element bound to its context; supports the usual operators."""

    ctx: FieldCtx
    value: int

    @property
    def coords(self) -> tuple[int, ...]:
        return self.ctx.coords(self.value)

    def _other(self, y) -> int:
        if isinstance(y, Elt):
            if y.ctx is not self.ctx:
                raise ValueError("elements from different fields")
            return y.value
        if isinstance(y, int):
            return self.ctx.scalar(y)
        return NotImplemented

    def __add__(self, y):
        return Elt(self.ctx, self.ctx.add(self.value, self._other(y)))

    __radd__ = __add__

    def __sub__(self, y):
        return Elt(self.ctx, self.ctx.sub(self.value, self._other(y)))

    def __rsub__(self, y):
        return Elt(self.ctx, self.ctx.sub(self._other(y), self.value))

    def __mul__(self, y):
        return Elt(self.ctx, self.ctx.mul(self.value, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return Elt(self.ctx, self.ctx.div(self.value, self._other(y)))

    def __neg__(self):
        return Elt(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return Elt(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, y):
        if isinstance(y, Elt):
            return self.ctx is y.ctx and self.value == y.value
        if isinstance(y, int):
            return self.value == self.ctx.scalar(y)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __lt__(self, y: "Elt") -> bool:
        return self.value < y.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"Elt({list(self.coords)})"


def _val(x) -> int:
    return x.value if isinstance(x, Elt) else x


def frobenius(x: Elt, e: int) -> Elt:
    """x^(q^e) for e >= 0."""
    if e < 0:
        raise ValueError("e must be non-negative")
    return Elt(x.ctx, x.ctx.frob(x.value, e))


def norm_k(x: Elt, k: int) -> Elt:
    """The norm of x from F_(q^k) down to F_q."""
    return Elt(x.ctx, x.ctx.norm(x.value, k))


def subfield_degree(x: Elt) -> int:
    """Smallest k dividing n with x in F_(q^k)."""
    return x.ctx.subfield_degree(x.value)


def enumerate_subfield(ctx: FieldCtx, k: int) -> list[Elt]:
    return [Elt(ctx, x) for x in ctx.subfield(k)]
