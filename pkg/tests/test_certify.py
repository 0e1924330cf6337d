"""Certification harness: pigeonhole guarantees, case chains, traces."""

import json
import math
from fractions import Fraction

import pytest

from sumprod import naive
from sumprod.certify import (
    DEGENERATE,
    aggregate_constants,
    exact_failures,
    exact_step_names,
    pigeonhole_decomposition,
    run_theorem,
)
from sumprod.errors import EmptyInput, HypothesisViolated, SetTooSmall, ZeroInSet
from sumprod.field import make_field, set_from_elements
from sumprod.quadruples import FULL, NONFULL
from sumprod.rng import SplitMix64
from sumprod.setops import dilate, dilate_intersection_size, product_set, sumset

F7 = make_field(7)
F101 = make_field(101)
F4099 = make_field(4099)


def fp(field, *elems):
    return set_from_elements(field, elems)


def random_set(rng, field, max_card, min_card=2):
    card = min_card + rng.below(max(1, max_card - min_card + 1))
    elems = set()
    while len(elems) < card:
        elems.add(1 + rng.below(field.p - 1))
    return set_from_elements(field, sorted(elems))


def steps_by_name(trace):
    return {s.name: s for s in trace.steps}


class TestPigeonhole:
    def test_subgroup_f7(self):
        ph = pigeonhole_decomposition(fp(F7, 1, 2, 4))
        # every intersection is 3, so each row sums to 9 and the dyadic
        # level [2, 4) captures the whole set
        assert ph.row_sum == 9
        assert ph.N == 2
        assert ph.A1.card == 3
        assert ph.level_count == 2
        assert ph.A1.card * ph.N >= Fraction(9, 4)

    def test_pair_f7(self):
        a = fp(F7, 1, 2)
        ph = pigeonhole_decomposition(a)
        vals = [dilate_intersection_size(ph.b0, x, a) for x in a.elements()]
        assert set(vals) <= {1, 2}
        assert ph.level_count == 2
        prod_card = product_set(a, a).card
        assert ph.N >= Fraction(a.card**2, 2 * ph.level_count * prod_card)

    def test_guarantees_random_battery(self):
        rng = SplitMix64(55)
        for _ in range(200):
            a = random_set(rng, F101, 10)
            ph = pigeonhole_decomposition(a)
            prod_card = product_set(a, a).card
            two_l = 2 * ph.level_count
            assert ph.N >= Fraction(a.card**2, two_l * prod_card)
            assert ph.A1.card * ph.N >= Fraction(a.card**3, two_l * prod_card)
            assert ph.row_sum * prod_card >= a.card**3
            # window: every member of A1 has intersection in [N, 2N)
            for x in ph.A1.elements():
                v = dilate_intersection_size(ph.b0, x, a)
                assert ph.N <= v < 2 * ph.N
            assert ph.A1.card * 2 * ph.N * ph.level_count >= ph.row_sum

    def test_zero_rejected(self):
        with pytest.raises(ZeroInSet):
            pigeonhole_decomposition(fp(F7, 0, 1))

    def test_too_small(self):
        with pytest.raises(SetTooSmall):
            pigeonhole_decomposition(fp(F7, 3))


def check_chain_soundness(a, trace):
    """Recompute the composite inequalities from raw cardinalities.

    Multiplying the exact steps yields (2.3)/(2.4) in the FULL case and
    (2.5)/(2.6) in the NONFULL case with the explicit envelopes below;
    the soft steps must sit inside them.
    """
    by = steps_by_name(trace)
    card_a = trace.card_a
    s_sum = trace.card_sumset
    s_prod = trace.card_productset
    assert s_sum == len(naive.sumset(a, a)) if card_a <= 64 else True
    n_level = trace.pigeonhole.N
    lvl = trace.pigeonhole.level_count
    a1 = trace.pigeonhole.A1

    # the four cor16 factors sit above the pigeonhole window
    q = trace.quadruple
    for c in (q.a1, q.a2, q.b1, q.b2):
        inter = dilate_intersection_size(trace.pigeonhole.b0, c, a)
        assert n_level <= inter < 2 * n_level

    s4 = Fraction(by["cor14.apply"].lhs)
    assert s4 <= by["cor14.apply"].rhs
    factor_bound = Fraction(s_sum**2, n_level)
    for i in range(1, 5):
        assert Fraction(by[f"cor16.factor.{i}"].lhs) <= by[f"cor16.factor.{i}"].rhs
        assert by[f"cor16.factor.{i}"].rhs <= factor_bound

    if trace.case_tag == FULL:
        s2 = Fraction(by["gk.lower"].lhs)
        assert by["gk.lower"].rhs == Fraction(a1.card**2, 2)
        assert s2 >= by["gk.lower"].rhs
        # |A1|^2 N^4 |A|^3 <= 2 |A+A|^8
        assert a1.card**2 * n_level**4 * card_a**3 <= 2 * s_sum**8
        assert by["eq2.3"].lhs == n_level**2 * card_a**9
        assert by["eq2.3"].rhs == s_sum**8 * s_prod**2
        assert by["eq2.3"].lhs <= 8 * lvl**2 * by["eq2.3"].rhs
        assert by["eq2.4"].lhs == card_a**13
        assert by["eq2.4"].rhs == s_sum**8 * s_prod**4
        assert by["eq2.4"].lhs <= 32 * lvl**4 * by["eq2.4"].rhs
    else:
        ref_lhs = Fraction(by["cor15.refine"].lhs)
        aprime_sq = Fraction(by["gk.lower"].rhs)
        size = Fraction(by["gk.lower"].lhs)
        assert size >= aprime_sq
        # the refined subset kept more than half of A1
        assert 4 * aprime_sq > a1.card**2
        # three-fold set embeds into the refined sumset
        assert size <= ref_lhs
        if a1.card <= 20:
            assert ref_lhs <= 8 * by["cor15.refine"].rhs
            # |A1|^3 N^4 |A|^3 <= 32 |A+A|^9
            assert a1.card**3 * n_level**4 * card_a**3 <= 32 * s_sum**9
            assert by["eq2.5"].lhs <= 256 * lvl**3 * by["eq2.5"].rhs
            assert by["eq2.6"].lhs <= 512 * lvl**4 * by["eq2.6"].rhs
        assert by["eq2.5"].lhs == n_level * card_a**12
        assert by["eq2.5"].rhs == s_sum**9 * s_prod**3
        assert by["eq2.6"].lhs == card_a**14
        assert by["eq2.6"].rhs == s_sum**9 * s_prod**4


class TestRunTheorem:
    def test_gp5_trace(self):
        a = fp(F101, 1, 2, 4, 8, 16)
        tr = run_theorem(a)
        assert tr.card_sumset == 15
        assert tr.card_productset == 9
        assert abs(tr.final_exponent - math.log(15) / math.log(5)) < 1e-12
        assert tr.final_exponent >= 14 / 13
        assert exact_failures(tr) == []
        check_chain_soundness(a, tr)

    def test_hypothesis_violations(self):
        with pytest.raises(HypothesisViolated):
            run_theorem(fp(F7, 1, 2, 4))  # 9 >= 7
        with pytest.raises(HypothesisViolated):
            run_theorem(fp(F101, 0, 1, 2))  # 0 in A
        with pytest.raises(HypothesisViolated):
            run_theorem(fp(F101, 5))  # |A| < 2

    def test_degenerate_trace(self):
        # tiny AP: the best dyadic level is the diagonal singleton
        a = fp(F4099, 1, 2, 3, 4)
        tr = run_theorem(a)
        assert tr.case_tag == DEGENERATE
        assert tr.quadruple is None
        assert [s.name for s in tr.steps] == ["pigeonhole.2.1", "pigeonhole.2.2"]
        assert exact_failures(tr) == []

    def test_nonfull_step_order(self):
        tr = run_theorem(fp(F101, 1, 2, 4, 8, 16))
        assert tr.case_tag == NONFULL
        assert [s.name for s in tr.steps] == [
            "pigeonhole.2.1",
            "pigeonhole.2.2",
            "cor15.refine",
            "gk.lower",
            "cor14.apply",
            "cor16.factor.1",
            "cor16.factor.2",
            "cor16.factor.3",
            "cor16.factor.4",
            "eq2.5",
            "eq2.6",
        ]

    def test_full_case_instance(self):
        # GP base 2 of size 32 mod 4099 lands in the FULL case
        elems = [pow(2, k, 4099) for k in range(32)]
        a = set_from_elements(F4099, elems)
        tr = run_theorem(a)
        assert tr.case_tag == FULL
        assert [s.name for s in tr.steps] == [
            "pigeonhole.2.1",
            "pigeonhole.2.2",
            "gk.lower",
            "cor14.apply",
            "cor16.factor.1",
            "cor16.factor.2",
            "cor16.factor.3",
            "cor16.factor.4",
            "eq2.3",
            "eq2.4",
        ]
        assert exact_failures(tr) == []
        check_chain_soundness(a, tr)

    def test_random_battery_both_cases(self):
        rng = SplitMix64(66)
        cases = {FULL: 0, NONFULL: 0, DEGENERATE: 0}
        for _ in range(120):
            p = (101, 257, 1009)[rng.below(3)]
            field = make_field(p)
            max_card = int((p - 1) ** 0.5)
            a = random_set(rng, field, min(12, max_card))
            tr = run_theorem(a)
            cases[tr.case_tag] += 1
            assert exact_failures(tr) == []
            if tr.case_tag != DEGENERATE:
                check_chain_soundness(a, tr)
        assert cases[NONFULL] >= 10
        assert cases[FULL] >= 1

    def test_determinism_byte_identical(self):
        a = fp(F101, 1, 2, 4, 8, 16)
        assert run_theorem(a).to_json() == run_theorem(a).to_json()

    def test_json_schema(self):
        tr = run_theorem(fp(F101, 1, 2, 4, 8, 16))
        doc = json.loads(tr.to_json())
        assert list(doc) == ["input", "case", "pigeonhole", "quadruple", "steps", "finalExponent"]
        assert list(doc["input"]) == ["p", "cardA", "cardSumset", "cardProductset"]
        assert list(doc["pigeonhole"]) == ["b0", "N", "cardA1", "L", "rowSum"]
        assert list(doc["quadruple"]) == ["a1", "a2", "b1", "b2", "xi"]
        for s in doc["steps"]:
            assert list(s) == ["name", "lhs", "rhs", "constant", "holds", "paperEq"]
        assert isinstance(doc["finalExponent"], float)


class TestAggregate:
    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            aggregate_constants([])

    def test_single_trace_echo(self):
        tr = run_theorem(fp(F101, 1, 2, 4, 8, 16))
        rep = aggregate_constants([tr])
        assert rep["traces"] == 1
        for s in tr.steps:
            stats = rep["byStep"][s.name]
            assert stats["min"] == stats["max"] == stats["median"] == s.constant
        assert rep["exactFailures"] == []

    def test_case_partition(self):
        rng = SplitMix64(77)
        traces = []
        for _ in range(60):
            a = random_set(rng, F101, 9)
            traces.append(run_theorem(a))
        rep = aggregate_constants(traces)
        assert sum(v["traces"] for v in rep["byCase"].values()) == 60
        assert rep["exactFailures"] == []

    def test_exact_step_names_by_case(self):
        tr = run_theorem(fp(F101, 1, 2, 4, 8, 16))
        names = exact_step_names(tr)
        assert "cor15.refine" in names  # small A1: exhaustive refinement
        assert "eq2.5" not in names
        deg = run_theorem(fp(F4099, 1, 2, 3, 4))
        assert exact_step_names(deg) == {"pigeonhole.2.1", "pigeonhole.2.2"}
