"""Index classification, partitioned sums, exact critical-strip checks."""

import csv
import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smalldivlab.bounds import brj1, brj2
from smalldivlab.contfrac import ExpansionError, FrequencySpec, expand
from smalldivlab.smalldiv import (
    L_value,
    away_bound_check,
    box_sum,
    brjuno_pairs_up_to,
    classify_index,
    partition_dump,
    partition_sums,
    verify_legendre,
)

pairs = st.tuples(
    st.integers(min_value=-60, max_value=60), st.integers(min_value=-60, max_value=60)
).filter(lambda t: t != (0, 0))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def test_classify_examples(golden):
    c = classify_index(1, 1, golden)
    assert (c.kind, c.k, c.a) == ("brjuno_pos", 1, 1)
    c = classify_index(1, -3, golden)
    assert (c.kind, c.strip) == ("away", 3)
    c = classify_index(4, 2, golden)
    assert c.kind == "const_type"
    # level-0 multiples of (q_0, p_0) = (1, 0)
    c = classify_index(1, 0, golden)
    assert (c.kind, c.k, c.a) == ("brjuno_pos", 0, 1)
    c = classify_index(-1, 0, golden)
    assert (c.kind, c.k, c.a) == ("brjuno_neg", 0, 1)


def test_classify_axis_edges(golden):
    # q = 0 gives integer divisor values; edges tile away from zero
    assert classify_index(0, -1, golden).strip == 1
    assert classify_index(0, 1, golden).strip == -2
    assert classify_index(0, 5, golden).strip == -6
    assert classify_index(0, -5, golden).strip == 5
    with pytest.raises(ExpansionError):
        classify_index(0, 0, golden)


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_classify_central_symmetry(pair):
    cf = expand(FrequencySpec.periodic((), (1, 2)), 50)
    q, p = pair
    a = classify_index(q, p, cf)
    b = classify_index(-q, -p, cf)
    if a.kind == "away":
        assert b.kind == "away" and b.strip == -a.strip - 1
    elif a.kind == "const_type":
        assert b.kind == "const_type"
    else:
        mirror = {"brjuno_pos": "brjuno_neg", "brjuno_neg": "brjuno_pos"}[a.kind]
        assert b.kind == mirror and (b.k, b.a) == (a.k, a.a)


@settings(max_examples=150, deadline=None)
@given(pairs)
def test_crit_strip_iff_not_away(pair):
    cf = expand(FrequencySpec.periodic((), (2, 1, 3)), 50)
    q, p = pair
    cls = classify_index(q, p, cf)
    box = cf.finest_sandwich()
    lo = q * box.lo - p
    hi = q * box.hi - p
    inside = max(abs(lo), abs(hi)) < 1  # |q omega - p| < 1 decided exactly
    on_edge = q == 0 and abs(p) == 1
    if inside:
        assert cls.kind in ("const_type", "brjuno_pos", "brjuno_neg")
    elif not on_edge:
        assert cls.kind == "away"
    else:
        assert cls.kind == "away"  # |divisor| = 1 exactly: tiled into away


def test_brjuno_table_completeness(golden):
    table = brjuno_pairs_up_to(golden, 200)
    # all-ones expansion: every astar is 1, so pairs are exactly the
    # convergents (q_k, p_k) with q_k <= 200, including both level-0 and
    # level-1 denominators q = 1
    fib = [q for q in golden.q if q <= 200]
    assert len(table.pairs) == len(fib)
    assert (1, 0) in table.pairs and (1, 1) in table.pairs


def test_brjuno_count_formula(pi_like):
    Q = 200
    table = brjuno_pairs_up_to(pi_like, Q)
    expected = 0
    for k in range(pi_like.depth):
        if pi_like.q[k] > Q:
            break
        expected += min(pi_like.astar[k], Q // pi_like.q[k])
    assert len(table.pairs) == expected
    sums = partition_sums(pi_like, 0.1, Q)
    assert sums.counts["brjuno_pos"] == expected
    assert sums.counts["brjuno_neg"] == expected


# ---------------------------------------------------------------------------
# L values
# ---------------------------------------------------------------------------


def test_L_golden_oracle(golden):
    got = L_value(1, 1, 0.1, golden)
    mp.mp.dps = 30
    w = (mp.sqrt(5) - 1) / 2
    expected = mp.exp(mp.mpf("-0.2")) / abs(w - 1)
    assert got == pytest.approx(float(expected), rel=1e-12)
    assert got == pytest.approx(2.1435, abs=1e-4)


@settings(max_examples=100, deadline=None)
@given(pairs)
def test_L_central_symmetry_exact(pair):
    cf = expand(FrequencySpec.periodic((), (3,)), 40)
    q, p = pair
    assert L_value(q, p, 0.17, cf) == L_value(-q, -p, 0.17, cf)


def test_L_monotone_to_zero_delta(golden):
    # L increases monotonically to 1/|q omega - p| as delta decreases
    values = [L_value(3, 2, d, golden) for d in (0.5, 0.2, 0.1, 0.01, 1e-6)]
    for a, b in zip(values, values[1:]):
        assert b > a
    box = golden.finest_sandwich()
    limit = 1.0 / abs(float(3 * box.midpoint - 2))
    assert values[-1] < limit
    assert values[-1] == pytest.approx(limit, rel=1e-4)


def test_L_log_mode(golden):
    direct = L_value(5, 3, 0.3, golden)
    assert L_value(5, 3, 0.3, golden, log=True) == pytest.approx(
        math.log(direct), rel=1e-12
    )


# ---------------------------------------------------------------------------
# partition sums
# ---------------------------------------------------------------------------


def test_partition_counts_tile_box(golden, sqrt2m1):
    for cf in (golden, sqrt2m1):
        sums = partition_sums(cf, 0.2, 40)
        assert sum(sums.counts.values()) == (2 * 40 + 1) ** 2 - 1


def test_partition_oracle(golden):
    sums = partition_sums(golden, 0.2, 200)
    oracle = box_sum(golden, 0.2, 200)
    assert abs(sums.total - oracle) <= 1e-12 * oracle
    assert sums.total == sums.away + sums.const_type + sums.brjuno


def test_partition_deterministic(golden):
    a = partition_sums(golden, 0.13, 60)
    b = partition_sums(golden, 0.13, 60)
    assert (a.away, a.const_type, a.brjuno, a.total) == (
        b.away,
        b.const_type,
        b.brjuno,
        b.total,
    )


def test_away_tail_majorant_contains_growth(golden):
    # enlarging the box adds at most the reported out-of-box away mass
    small = partition_sums(golden, 0.25, 30)
    big = partition_sums(golden, 0.25, 60)
    assert big.away - small.away <= small.away_tail_bound
    assert small.away_tail_bound > 0.0
    # direct lattice check of the majorant itself
    direct = math.fsum(
        math.exp(-(abs(q) + abs(p)) * 0.25)
        for q in range(-60, 61)
        for p in range(-60, 61)
        if max(abs(q), abs(p)) > 30
    )
    from smalldivlab.smalldiv import away_tail_majorant

    assert direct <= away_tail_majorant(0.25, 30) + 1e-12


def test_partition_k0_subset(golden):
    sums = partition_sums(golden, 0.2, 50)
    assert 0.0 < sums.brjuno_k0 < sums.brjuno
    # level-0 part is the two pairs (1, 0) and (-1, 0)
    assert sums.brjuno_k0 == pytest.approx(2.0 * L_value(1, 0, 0.2, golden), rel=1e-15)


def test_partition_dump_schema(tmp_path, golden):
    path = tmp_path / "dump.csv"
    partition_dump(golden, 0.3, 6, path)
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == (2 * 6 + 1) ** 2 - 1
    assert set(rows[0]) == {"q", "p", "class", "k", "a", "strip_n", "L"}
    classes = {r["class"] for r in rows}
    assert classes == {"away", "const_type", "brjuno_pos", "brjuno_neg"}
    # spot check central symmetry in the dump
    by_pair = {(int(r["q"]), int(r["p"])): r for r in rows}
    for (q, p), r in by_pair.items():
        m = by_pair[(-q, -p)]
        assert r["L"] == m["L"]


# ---------------------------------------------------------------------------
# exact critical-strip check
# ---------------------------------------------------------------------------


def test_legendre_golden(golden):
    rep = verify_legendre(golden, 2000)
    assert rep.verdict
    assert not rep.params["violations"]
    assert rep.params["checked"] > 0
    assert rep.computed <= 1.0


def test_legendre_sqrt2(sqrt2m1):
    rep = verify_legendre(sqrt2m1, 2000)
    assert rep.verdict and not rep.params["violations"]


def test_legendre_tiny_box(golden):
    rep = verify_legendre(golden, 1)
    assert rep.verdict


# ---------------------------------------------------------------------------
# box sums against their closed-form majorants
# ---------------------------------------------------------------------------


def test_away_bound(golden):
    rep = away_bound_check(golden, 0.1, 500, mu=1.25)
    assert rep.verdict, rep
    rep2 = away_bound_check(golden, 0.05, 500, mu=1.25)
    assert rep2.verdict
    # the bound roughly doubles (times the log ratio) while the sum follows
    assert rep2.bound > 2.0 * rep.bound
    assert rep2.computed > rep.computed
    assert rep.computed >= 0.0


def test_away_bound_strip_cutoff(golden):
    full = away_bound_check(golden, 0.1, 200, mu=1.25)
    cut = away_bound_check(golden, 0.1, 200, mu=1.25, n_max=3)
    assert cut.computed <= full.computed
    assert cut.verdict


def test_const_type_box_bound(golden, sqrt2m1, pi_like):
    mu = 1.25
    for cf in (golden, sqrt2m1, pi_like):
        omega = cf.omega_float()
        for delta in (0.05, 0.1, 0.2):
            sums = partition_sums(cf, delta, 200)
            bound = mu * 8.0 / (1.0 + omega) ** 2 / delta**2
            assert sums.const_type <= bound
            # and the crude critical-strip majorant dominates the class sum
            crit_majorant = 0.0
            m = None
            from smalldivlab.smalldiv import _box_kernel

            table, floors, _, _ = _box_kernel(cf, 200)
            for q in range(1, 201):
                fl = floors[q]
                for p in (fl, fl + 1):
                    if abs(p) <= 200:
                        crit_majorant += 2 * (
                            2 * q * math.exp(-(abs(p) + q) * delta)
                        )
            assert sums.const_type <= crit_majorant + 1e-9
            assert crit_majorant <= bound * 1.0001


def test_brjuno_box_bound(golden, sqrt2m1, pi_like):
    mu = 1.25
    eps = mu - 1.0
    for cf in (golden, sqrt2m1, pi_like):
        omega = cf.omega_float()
        for delta in (0.05, 0.1, 0.2):
            sums = partition_sums(cf, delta, 200)
            Delta = (1.0 + omega) * delta
            depth = cf.depth - 1
            bound = 2.0 * (
                (2.0 + eps) * brj1(cf, Delta, depth).value
                + (1.0 + eps) * brj2(cf, 2.0 * Delta, depth).value
            )
            assert sums.brjuno <= bound, (cf.spec.describe(), delta)
