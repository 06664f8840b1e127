"""Statement registry, hypothesis table and run_check."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ..gf_tower import divisors, is_prime
from . import line_checks as L
from . import plane_checks as P
from . import spread_checks as S
from .common import is_prime_power
from .report import CheckParams, HypothesisError, Report, Tally, UsageError


@dataclass(frozen=True)
class Statement:
    sid: str
    anchor: str
    fn: object
    needs: tuple = ()


def _composite(n):
    return n > 1 and not is_prime(n)


HYPOTHESES = {
    "q>2": (lambda q, n: q > 2, "q > 2"),
    "q>=n": (lambda q, n: q >= n, "q >= n"),
    "n composite": (lambda q, n: _composite(n), "n composite"),
    "n prime power": (lambda q, n: is_prime_power(n), "n a prime power"),
    "n>=3": (lambda q, n: n >= 3, "n >= 3"),
    "n>=2": (lambda q, n: n >= 2, "n >= 2"),
}

STATEMENTS = {s.sid: s for s in (
    Statement("L1.1", "the stabiliser of l_infinity acts compatibly on PG(2,q^n), Sigma and Sigma*", L.check_L1_1),
    Statement("L2.1", "l_(omega,1) lies in a tangent F_(q^d)-subline iff omega is in F_(q^d)", L.check_L2_1),
    Statement("L2.2", "every subline is equivalent to some l_(omega,k) under the stabiliser", L.check_L2_2),
    Statement("T2.3", "tangent F_(q^k)-sublines <-> affine k-flats on D_k elements", L.check_T2_3),
    Statement("L2.5", "A, B, C and the conjugate points of E_m are not in general position for m != min S", L.check_L2_5),
    Statement("T2.6", "external F_q-sublines <-> NRCs of degree k with k conjugate points on the D_k indicator set",
              L.check_T2_6, ("q>=n", "n>=2")),
    Statement("C2.7", "external F_(q^k)-sublines: q^k+1 points, no three collinear, NRCs through every triple",
              L.check_C2_7, ("q>=n", "n>=2")),
    Statement("R2.8", "a set of PG(1,q^n) closed under F_q-sublines of triples is an F_(q^k)-subline",
              L.check_R2_8, ("q>2",)),
    Statement("C2.9", "for n a prime power, (i) and (ii) characterise images of external sublines",
              L.check_C2_9, ("q>=n", "n prime power", "n>=3")),
    Statement("T2.10", "four equivalent descriptions of images of F_(q^k)-sublines of l_infinity",
              S.check_T2_10, ("q>2",)),
    Statement("C2.11", "the D_k subspread is the unique Desarguesian (k-1)-subspread", S.check_C2_11),
    Statement("T3.1", "secant F_(q^k)-subplanes <-> affine 2k-flats meeting q^k+1 spread elements", S.check_T3_1),
    Statement("L3.2", "every F_q-subplane is equivalent to some pi_(omega,lambda)", P.check_L3_2, ("n>=2",)),
    Statement("L3.3", "pi_(omega,0) lies in a secant F_(q^d)-subplane iff omega is in F_(q^d)", P.check_L3_3, ("n>=2",)),
    Statement("L3.4", "at most one normal rational scroll through C1*, C2* and a line <P, Q>", P.check_L3_4, ("n>=3",)),
    Statement("T3.5", "tangent F_q-subplanes <-> affine points of normal rational scrolls (S1)-(S3)",
              P.check_T3_5, ("q>=n", "n>=2")),
    Statement("R2", "for k < n, C_omega* misses every transversal line nu^(sigma^j)", P.check_R2, ("n composite",)),
    Statement("R4", "external F_q-subplanes: every two points of the image lie on an NRC inside it",
              P.check_R4, ("n>=3", "q>=n")),
)}

ORDER = list(STATEMENTS)


def check_hypotheses(cp: CheckParams) -> None:
    if cp.statement not in STATEMENTS:
        raise UsageError(f"unknown statement {cp.statement!r}; valid ids: {', '.join(ORDER)}")
    if cp.mode not in ("exhaustive", "sample"):
        raise UsageError("mode must be 'exhaustive' or 'sample'")
    if cp.samples < 1:
        raise UsageError("samples must be positive")
    if cp.k is not None and (cp.k < 1 or cp.n % cp.k):
        raise HypothesisError(f"k={cp.k} does not divide n={cp.n}")
    for key in STATEMENTS[cp.statement].needs:
        test, text = HYPOTHESES[key]
        if not test(cp.q, cp.n):
            raise HypothesisError(f"{cp.statement} requires {text} (q={cp.q}, n={cp.n})")


def run_check(cp: CheckParams) -> Report:
    check_hypotheses(cp)
    ctx = cp.ctx()
    t0 = time.perf_counter()
    params = cp.to_json()
    rep = Report(cp.statement, params, cp.mode, cp.seed)
    info: dict = {}
    STATEMENTS[cp.statement].fn(cp, ctx, Tally(rep), info)
    params.update(info)
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep


# -- the demo grid ---------------------------------------------------------------------

DEMO_GRID = ((3, 2), (4, 2), (5, 2), (3, 3), (4, 3), (3, 4), (4, 4))

_SMALL = {(3, 2), (4, 2), (5, 2)}


def _ph(q):
    for p in (2, 3, 5, 7):
        h, x = 0, q
        while x % p == 0:
            x //= p
            h += 1
        if x == 1 and h:
            return p, h
    raise ValueError(q)


def _demo_entries(sid, q, n):
    """(k, mode, samples) runs of one statement at one grid point; [] when out of scope."""
    Q = q**n
    ks = divisors(n)
    if sid == "L1.1":
        return [(None, "exhaustive" if Q <= 9 else "sample", 20)]
    if sid in ("L2.1", "L3.3"):
        return [(None, "exhaustive" if Q <= 81 else "sample", 20)]
    if sid in ("L2.2", "L2.5", "L3.2"):
        return [(None, "sample", 20)]
    if sid == "T2.3":
        return [(k, "exhaustive" if Q <= 25 else "sample", 20) for k in ks]
    if sid in ("T2.6", "T3.5"):
        return [(None, "sample", 20)]
    if sid == "C2.7":
        return [(None, "sample", 10)]
    if sid == "R2.8":
        if Q + 1 <= 17:
            return [(None, "exhaustive", 1)]
        return [(None, "sample", 10)] if Q <= 27 else []
    if sid == "C2.9":
        return [(None, "exhaustive", 1)] if (q, n) == (3, 3) else [(None, "sample", 5)]
    if sid == "T2.10":
        return [(k, "exhaustive" if Q <= 16 else "sample", 20) for k in ks if k < n]
    if sid in ("C2.11", "T3.1"):
        return [(k, "sample", 10) for k in ks if k < n or sid == "T3.1"]
    if sid == "L3.4":
        return [(None, "exhaustive" if Q <= 64 else "sample", 20)]
    if sid == "R2":
        return [(k, "exhaustive", 1) for k in ks if 1 < k < n]
    if sid == "R4":
        return [(None, "exhaustive" if (q, n) == (3, 3) else "sample", 3)]
    return []


def demo_plan(seed: int = 0) -> list[CheckParams]:
    plan = []
    for sid in ORDER:
        for q, n in DEMO_GRID:
            p, h = _ph(q)
            for k, mode, samples in _demo_entries(sid, q, n):
                cp = CheckParams(sid, p, h, n, k, mode, samples, seed)
                try:
                    check_hypotheses(cp)
                except HypothesisError:
                    continue
                plan.append(cp)
    return plan


def workers() -> int:
    raw = os.environ.get("ABB_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("ABB_THREADS must be an integer")
    return n if n > 0 else (os.cpu_count() or 1)


def run_many(plan: list[CheckParams], max_workers: int | None = None) -> list[Report]:
    """Run independent checks, in parallel when more than one worker is allowed.

    Results come back in plan order, so output does not depend on scheduling.
    """
    w = workers() if max_workers is None else max_workers
    if w <= 1 or len(plan) <= 1:
        return [run_check(cp) for cp in plan]
    with ProcessPoolExecutor(max_workers=w) as ex:
        return list(ex.map(run_check, plan))
