"""Partitioned small-divisor summation over integer frequency boxes.

Every index pair (q, p) != (0, 0) falls in exactly one class:

* ``brjuno``: (q, p) = (a q_k, a p_k) with k >= 0, 1 <= a <= astar[k]
  (positive branch q > 0; the central mirror is the negative branch);
* ``const_type``: inside the critical strip |q omega - p| < 1 but not a
  convergent multiple -- there |q omega - p| >= 1/(2|q|);
* ``away``: everything else, organized in unit strips
  n < q omega - p < n + 1 with n outside {-1, 0}.

Classification is exact: floors of q*omega come from convergent
sandwiches (never floats), and q*omega - p is irrational for q != 0, so
no comparison ever sits on a boundary.  The only integer values of
q*omega - p occur on the q = 0 column; the pairs (0, -m) / (0, m) with
m >= 1 sit on strip edges and are tiled into Away(m) / Away(-m-1), the
assignment that preserves central symmetry (class(q, p) maps to
class(-q, -p) with Away(n) <-> Away(-n-1)).

Summand: L(q, p) = e^(-(|p|+|q|) delta) / |q omega - p|, evaluated as an
interval midpoint with the interval width folded into the error bound.
Sums use exact float summation, so identical inputs give bit-identical
results in any grouping.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional

from .bounds import BoundReport
from .contfrac import (
    ContinuedFraction,
    DepthExhausted,
    ExpansionError,
    floor_mult,
    mul_big_float,
    resolve_depth_for_box,
)

_REL_WIDTH_TOL = 1e-12


@dataclass(frozen=True)
class IndexClass:
    """Exactly one of away / const_type / brjuno_pos / brjuno_neg.

    ``strip`` is set for away indices; ``k`` and ``a`` for convergent
    multiples (q, p) = (+-a q_k, +-a p_k).
    """

    kind: str
    strip: Optional[int] = None
    k: Optional[int] = None
    a: Optional[int] = None


@dataclass(frozen=True)
class PartitionSums:
    """Per-class sums over a box 0 < max(|q|, |p|) <= Q, plus counts.

    ``brjuno_k0`` is the level-0 part of the brjuno sum (multiples of
    (q_0, p_0) = (1, 0)); it is included in ``brjuno`` but reported
    separately because the weighted series it is compared against start
    at level 1.  ``total`` is exactly away + const_type + brjuno.
    ``away_tail_bound`` majorizes the away mass outside the box (every
    away summand is below e^(-(|q|+|p|) delta), whose lattice sum has a
    closed geometric form).
    """

    away: float
    const_type: float
    brjuno: float
    brjuno_k0: float
    total: float
    counts: dict
    delta: float
    Q: int
    away_tail_bound: float = 0.0


def away_tail_majorant(delta: float, Q: int) -> float:
    """Geometric bound on sum of e^(-(|q|+|p|) delta) over max(|q|,|p|) > Q."""
    r = math.exp(-delta)
    s_inf = (1.0 + r) / (1.0 - r)
    s_Q = 1.0 + 2.0 * r * (1.0 - r**Q) / (1.0 - r)
    return s_inf * s_inf - s_Q * s_Q


@dataclass(frozen=True)
class BrjunoTable:
    """Canonical convergent multiples with q <= Q: {(q, p): (k, a)}."""

    pairs: dict
    Q: int


def brjuno_pairs_up_to(cf: ContinuedFraction, Q: int) -> BrjunoTable:
    """Enumerate (a q_k, a p_k) with a q_k <= Q, 1 <= a <= astar[k].

    Requires the expansion to reach a denominator beyond Q so the
    enumeration is provably complete.
    """
    if Q < 1:
        raise ExpansionError("box radius must be >= 1")
    if cf.q[-1] <= Q and cf.exact is None:
        raise DepthExhausted(
            f"expansion depth {cf.depth} stops at q = {cf.q[-1]} <= Q = {Q}; "
            "expand deeper to enumerate convergent multiples"
        )
    pairs = {}
    for k in range(cf.depth):
        qk = cf.q[k]
        if qk > Q:
            break
        pk = cf.p[k]
        a_max = min(cf.astar[k], Q // qk)
        for a in range(1, a_max + 1):
            key = (a * qk, a * pk)
            # convergent pairs are primitive and distinct, so no collisions
            pairs[key] = (k, a)
    return BrjunoTable(pairs=pairs, Q=Q)


def _floor_table(cf: ContinuedFraction, Q: int):
    """floors[q] = floor(q * omega) for q = 1..Q, all resolved at one level."""
    m = resolve_depth_for_box(cf, Q)
    box = cf.sandwich(m)
    lon, lod = box.lo.numerator, box.lo.denominator
    hin, hid = box.hi.numerator, box.hi.denominator
    floors = [0] * (Q + 1)
    for q in range(1, Q + 1):
        f_lo = (q * lon) // lod
        f_hi = (q * hin) // hid
        if f_lo != f_hi:  # cannot happen once q_m > 2Q; kept as a guard
            floors[q] = floor_mult(cf, q)
        else:
            floors[q] = f_lo
    return floors


def classify_index(
    q: int, p: int, cf: ContinuedFraction, table: Optional[BrjunoTable] = None
) -> IndexClass:
    """Assign the unique class of a nonzero index pair."""
    if q == 0 and p == 0:
        raise ExpansionError("(0, 0) carries no small divisor")
    radius = max(abs(q), abs(p), 1)
    if table is None or table.Q < abs(q):
        table = brjuno_pairs_up_to(cf, radius)
    if q > 0 and (q, p) in table.pairs:
        k, a = table.pairs[(q, p)]
        return IndexClass(kind="brjuno_pos", k=k, a=a)
    if q < 0 and (-q, -p) in table.pairs:
        k, a = table.pairs[(-q, -p)]
        return IndexClass(kind="brjuno_neg", k=k, a=a)
    if q == 0:
        # q*omega - p = -p exactly; edge pairs are tiled away from zero
        return IndexClass(kind="away", strip=(-p - 1) if p > 0 else -p)
    n = (floor_mult(cf, q) if q > 0 else -floor_mult(cf, -q) - 1) - p
    if n in (-1, 0):
        return IndexClass(kind="const_type")
    return IndexClass(kind="away", strip=n)


def L_value(
    q: int, p: int, delta: float, cf: ContinuedFraction, log: bool = False
) -> float:
    """L(q, p) = e^(-(|p|+|q|) delta) / |q omega - p| (midpoint evaluation).

    The divisor interval comes from the finest sandwich; its relative
    width must be below 1e-12 or the call asks for a deeper expansion.
    With ``log=True`` the natural log of L is returned (for huge boxes
    where the exponential underflows).
    """
    if q == 0 and p == 0:
        raise ExpansionError("(0, 0) carries no small divisor")
    if delta <= 0:
        raise ValueError("delta must be > 0")
    # canonical representative fixes the rounding path, so L(q,p) == L(-q,-p)
    if q < 0 or (q == 0 and p < 0):
        q, p = -q, -p
    if q == 0:
        d_mid = float(abs(p))
    else:
        from .contfrac import divisor_interval

        d_lo, d_hi = divisor_interval(cf, q, p)
        if d_lo <= 0 <= d_hi:
            raise DepthExhausted(
                f"divisor sign unresolved at (q={q}, p={p}); expand deeper"
            )
        a_lo, a_hi = (d_lo, d_hi) if d_lo > 0 else (-d_hi, -d_lo)
        if a_hi - a_lo > _REL_WIDTH_TOL * a_lo:
            raise DepthExhausted(
                f"divisor interval too wide at (q={q}, p={p}); expand deeper"
            )
        d_mid = (float(a_lo) + float(a_hi)) / 2.0
    exponent = -mul_big_float(abs(p) + abs(q), delta)
    if log:
        return exponent - math.log(d_mid)
    return math.exp(exponent) / d_mid


# ---------------------------------------------------------------------------
# box scans
# ---------------------------------------------------------------------------


def _box_kernel(cf: ContinuedFraction, Q: int):
    """Shared exact machinery for box scans: floors, table, divisor floats."""
    table = brjuno_pairs_up_to(cf, Q)
    floors = _floor_table(cf, Q)
    if cf.exact is not None:
        lon, lod = cf.exact.numerator, cf.exact.denominator
        hin, hid = lon, lod
    else:
        box = cf.finest_sandwich()
        lon, lod = box.lo.numerator, box.lo.denominator
        hin, hid = box.hi.numerator, box.hi.denominator
    # p * denominator products, shared across all q
    plo = [p * lod for p in range(-Q, Q + 1)]
    phi = [p * hid for p in range(-Q, Q + 1)]

    def divisor(q: int, p: int, qlon: int, qhin: int) -> float:
        # exact integer endpoints of q*omega - p, rounded once each
        d_lo = (qlon - plo[p + Q]) / lod
        d_hi = (qhin - phi[p + Q]) / hid
        if d_lo > 0.0:
            lo, hi = d_lo, d_hi
        elif d_hi < 0.0:
            lo, hi = -d_hi, -d_lo
        else:
            raise DepthExhausted(
                f"divisor unresolved at (q={q}, p={p}); expand deeper"
            )
        if hi - lo > _REL_WIDTH_TOL * lo:
            raise DepthExhausted(
                f"divisor interval too wide at (q={q}, p={p}); expand deeper"
            )
        return 0.5 * (lo + hi)

    return table, floors, (lon, lod, hin, hid), divisor


def partition_sums(cf: ContinuedFraction, delta: float, Q: int) -> PartitionSums:
    """Classify and sum L over all 0 < max(|q|, |p|) <= Q, one pass per class."""
    if delta <= 0:
        raise ValueError("delta must be > 0")
    if Q < 1:
        raise ExpansionError("box radius must be >= 1")
    table, floors, (lon, lod, hin, hid), divisor = _box_kernel(cf, Q)

    away_terms: list = []
    const_terms: list = []
    brj_terms: list = []
    brj_k0_terms: list = []
    counts = {"away": 0, "const_type": 0, "brjuno_pos": 0, "brjuno_neg": 0}

    # canonical half: q >= 1, every p; the mirror (-q, -p) shares its L value
    for q in range(1, Q + 1):
        qlon = q * lon
        qhin = q * hin
        fl = floors[q]
        for p in range(-Q, Q + 1):
            entry = table.pairs.get((q, p))
            L = math.exp(-(abs(p) + q) * delta) / divisor(q, p, qlon, qhin)
            if entry is not None:
                brj_terms.append(L)
                brj_terms.append(L)
                counts["brjuno_pos"] += 1
                counts["brjuno_neg"] += 1
                if entry[0] == 0:
                    brj_k0_terms.append(L)
                    brj_k0_terms.append(L)
            elif fl - p in (-1, 0):
                const_terms.append(L)
                const_terms.append(L)
                counts["const_type"] += 2
            else:
                away_terms.append(L)
                away_terms.append(L)
                counts["away"] += 2
    # q = 0 column: |q omega - p| = |p| exactly; both signs are away pairs
    for p in range(1, Q + 1):
        L = math.exp(-p * delta) / p
        away_terms.append(L)
        away_terms.append(L)
        counts["away"] += 2

    away = math.fsum(away_terms)
    const_type = math.fsum(const_terms)
    brjuno = math.fsum(brj_terms)
    return PartitionSums(
        away=away,
        const_type=const_type,
        brjuno=brjuno,
        brjuno_k0=math.fsum(brj_k0_terms),
        total=away + const_type + brjuno,
        counts=counts,
        delta=delta,
        Q=Q,
        away_tail_bound=away_tail_majorant(delta, Q),
    )


def box_sum(cf: ContinuedFraction, delta: float, Q: int) -> float:
    """Single-pass unclassified sum of L over the same box (partition oracle)."""
    if delta <= 0:
        raise ValueError("delta must be > 0")
    _, _, (lon, lod, hin, hid), divisor = _box_kernel(cf, Q)
    terms = []
    for q in range(1, Q + 1):
        qlon = q * lon
        qhin = q * hin
        for p in range(-Q, Q + 1):
            L = math.exp(-(abs(p) + q) * delta) / divisor(q, p, qlon, qhin)
            terms.append(L)
            terms.append(L)
    for p in range(1, Q + 1):
        L = math.exp(-p * delta) / p
        terms.append(L)
        terms.append(L)
    return math.fsum(terms)


def partition_dump(cf: ContinuedFraction, delta: float, Q: int, path) -> None:
    """Audit CSV with one row per box pair: q,p,class,k,a,strip_n,L."""
    table, floors, (lon, lod, hin, hid), divisor = _box_kernel(cf, Q)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "p", "class", "k", "a", "strip_n", "L"])
        for q in range(-Q, Q + 1):
            aq = abs(q)
            qlon = aq * lon
            qhin = aq * hin
            for p in range(-Q, Q + 1):
                if q == 0 and p == 0:
                    continue
                if q == 0:
                    cls = IndexClass(kind="away", strip=(-p - 1) if p > 0 else -p)
                    L = math.exp(-abs(p) * delta) / abs(p)
                else:
                    cp = p if q > 0 else -p
                    entry = table.pairs.get((aq, cp))
                    if entry is not None:
                        kind = "brjuno_pos" if q > 0 else "brjuno_neg"
                        cls = IndexClass(kind=kind, k=entry[0], a=entry[1])
                    else:
                        n = floors[aq] - cp
                        if n in (-1, 0):
                            cls = IndexClass(kind="const_type")
                        else:
                            cls = IndexClass(
                                kind="away", strip=n if q > 0 else -n - 1
                            )
                    L = math.exp(-(abs(p) + aq) * delta) / divisor(aq, cp, qlon, qhin)
                writer.writerow(
                    [
                        q,
                        p,
                        cls.kind,
                        "" if cls.k is None else cls.k,
                        "" if cls.a is None else cls.a,
                        "" if cls.strip is None else cls.strip,
                        repr(L),
                    ]
                )


# ---------------------------------------------------------------------------
# exact Legendre check and the away-bound report
# ---------------------------------------------------------------------------


def verify_legendre(cf: ContinuedFraction, Q: int) -> BoundReport:
    """For every critical-strip pair with 0 < q <= Q that is not a convergent
    multiple, verify |q omega - p| >= 1/(2q) by exact integer comparison.

    Reports max over checked pairs of 1/(2q |q omega - p|) against the
    bound 1; any violating pair (a classification defect, not a math
    failure) is listed in params["violations"].
    """
    if Q < 1:
        raise ExpansionError("box radius must be >= 1")
    table = brjuno_pairs_up_to(cf, Q)
    floors = _floor_table(cf, Q)
    if cf.exact is not None:
        raise ExpansionError("verify_legendre needs an irrational frequency")
    box = cf.finest_sandwich()
    lon, lod = box.lo.numerator, box.lo.denominator
    hin, hid = box.hi.numerator, box.hi.denominator

    worst = 0.0
    checked = 0
    violations = []
    for q in range(1, Q + 1):
        fl = floors[q]
        for p in (fl, fl + 1):
            if p == 0 and q == 0:
                continue
            if (q, p) in table.pairs:
                continue
            checked += 1
            # sign of 2q(q*omega - p) -+ 1 through both sandwich endpoints
            s = 1 if p == fl else -1  # sign of q*omega - p
            lo_num = s * (2 * q * (q * lon - p * lod)) - lod
            hi_num = s * (2 * q * (q * hin - p * hid)) - hid
            if s < 0:
                lo_num, hi_num = hi_num, lo_num
            if lo_num >= 0 and hi_num >= 0:
                ok = True
            elif lo_num <= 0 and hi_num <= 0:
                ok = False
            else:
                raise DepthExhausted(
                    f"legendre comparison unresolved at (q={q}, p={p}); expand deeper"
                )
            d_lo = abs(q * lon - p * lod) / lod
            d_hi = abs(q * hin - p * hid) / hid
            ratio = 1.0 / (2.0 * q * min(d_lo, d_hi))
            worst = max(worst, ratio)
            if not ok:
                violations.append((q, p))
    return BoundReport(
        quantity="max of 1/(2 q |q omega - p|) over non-convergent critical pairs",
        computed=worst,
        bound=1.0,
        params={"Q": Q, "checked": checked, "violations": violations},
    )


def away_bound_check(
    cf: ContinuedFraction,
    delta: float,
    Q: int,
    mu: float = 1.25,
    n_max: Optional[int] = None,
    sums: Optional[PartitionSums] = None,
) -> BoundReport:
    """Box away sum against mu * (4/(1+omega) + 2/(1-omega)) delta^-1 log(1/delta).

    The box sum is a lower bound of the full away series, so the verdict
    is expected true whenever log(1/delta) > 1.  ``n_max``, when given,
    restricts to strips |n| <= n_max.
    """
    if delta * math.e >= 1.0:
        raise ValueError("away bound needs log(1/delta) > 1, i.e. delta < 1/e")
    if n_max is None:
        if sums is None:
            sums = partition_sums(cf, delta, Q)
        computed = sums.away
    else:
        table, floors, (lon, lod, hin, hid), divisor = _box_kernel(cf, Q)
        terms = []
        for q in range(1, Q + 1):
            qlon, qhin = q * lon, q * hin
            fl = floors[q]
            for p in range(-Q, Q + 1):
                if (q, p) in table.pairs:
                    continue
                n = fl - p
                if n in (-1, 0) or abs(n) > n_max:
                    continue
                L = math.exp(-(abs(p) + q) * delta) / divisor(q, p, qlon, qhin)
                terms.append(L)
                terms.append(L)
        for p in range(1, min(Q, n_max) + 1):
            L = math.exp(-p * delta) / p
            terms.append(L)
            terms.append(L)
        computed = math.fsum(terms)
    omega = cf.omega_float()
    leading = 4.0 / (1.0 + omega) + 2.0 / (1.0 - omega)
    bound = mu * leading * math.log(1.0 / delta) / delta
    return BoundReport(
        quantity="away box sum",
        computed=computed,
        bound=bound,
        params={
            "delta": delta,
            "Q": Q,
            "mu": mu,
            "n_max": n_max,
            "G_away_leading": leading,
        },
    )
