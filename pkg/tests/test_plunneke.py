"""Triangle inequality, witness finders, corollary bounds, refinement."""

from fractions import Fraction
from itertools import combinations

import pytest

from sumprod import naive
from sumprod.errors import EmptyIntersection, EmptyPivot, SearchBoundExceeded, ZeroDilate
from sumprod.field import make_field, set_from_elements
from sumprod.plunneke import (
    cor14_bound,
    cor16_bounds,
    find_plunneke_witness_exhaustive,
    find_plunneke_witness_greedy,
    refine_large_subset,
    ruzsa_triangle_check,
)
from sumprod.rng import SplitMix64

F7 = make_field(7)
F11 = make_field(11)
F61 = make_field(61)
F101 = make_field(101)


def fp(field, *elems):
    return set_from_elements(field, elems)


def random_set(rng, field, max_card, min_card=1):
    card = min_card + rng.below(max(1, max_card - min_card + 1))
    elems = set()
    while len(elems) < card:
        elems.add(1 + rng.below(field.p - 1))
    return set_from_elements(field, sorted(elems))


def brute_force_best_ratio(x, bs):
    """Oracle: scan subsets with plain sets, return the minimal ratio."""
    p = x.field.p
    total = {0}
    for b in bs:
        total = {(u + v) % p for u in total for v in b.elements()}
    best = None
    for k in range(1, x.card + 1):
        for combo in combinations(x.elements(), k):
            card = len({(c + t) % p for c in combo for t in total})
            r = Fraction(card, k)
            if best is None or r < best:
                best = r
    return best


class TestRuzsaTriangle:
    def test_spec_instance(self):
        chk = ruzsa_triangle_check(fp(F11, 0, 1), fp(F11, 0, 2), fp(F11, 0, 3))
        assert (chk.lhs, chk.rhs, chk.holds) == (4, Fraction(8), True)

    def test_all_equal(self):
        x = fp(F11, 1, 4, 6)
        chk = ruzsa_triangle_check(x, x, x)
        assert chk.lhs == naive.difference_set(x, x).__len__()
        assert chk.holds

    def test_singleton_sides(self):
        chk = ruzsa_triangle_check(fp(F11, 3, 4), fp(F11, 5), fp(F11, 5))
        assert chk.lhs == 1 and chk.holds

    def test_empty_pivot(self):
        with pytest.raises(EmptyPivot):
            ruzsa_triangle_check(set_from_elements(F11, []), fp(F11, 1), fp(F11, 2))

    def test_random_battery(self):
        rng = SplitMix64(31)
        for _ in range(300):
            x = random_set(rng, F101, 12)
            y = random_set(rng, F101, 12)
            z = random_set(rng, F101, 12)
            assert ruzsa_triangle_check(x, y, z).holds


class TestExhaustiveWitness:
    def test_whole_set_witness(self):
        x = fp(F7, 0, 1)
        w = find_plunneke_witness_exhaustive(x, [x])
        assert w.subset == x
        assert w.alphas == (Fraction(3, 2),)
        assert w.sum_card == 3
        assert w.measured_constant == 1

    def test_spec_f11_instance(self):
        x = fp(F11, 0, 1, 2)
        w = find_plunneke_witness_exhaustive(x, [fp(F11, 0, 1), fp(F11, 0, 3)])
        # X itself is the minimal-ratio witness here: |X+B1+B2| = 7 <= (4/3)*2*3 = 8
        assert w.subset == x
        assert w.sum_card == 7
        assert w.measured_constant == Fraction(7, 8)

    def test_constant_never_exceeds_one(self):
        rng = SplitMix64(32)
        for _ in range(200)[:200]:
            x = random_set(rng, F61, 12)
            k = 1 + rng.below(3)
            bs = [random_set(rng, F61, 8) for _ in range(k)]
            w = find_plunneke_witness_exhaustive(x, bs)
            assert w.measured_constant <= 1
            assert w.subset.card >= 1 and w.subset.is_subset_of(x)

    def test_matches_brute_force_minimum(self):
        rng = SplitMix64(33)
        for _ in range(40):
            x = random_set(rng, F61, 7)
            k = 1 + rng.below(2)
            bs = [random_set(rng, F61, 6) for _ in range(k)]
            w = find_plunneke_witness_exhaustive(x, bs)
            total = bs[0]
            from sumprod.setops import sumset

            for b in bs[1:]:
                total = sumset(total, b)
            got_ratio = Fraction(w.sum_card, w.subset.card)
            assert got_ratio == brute_force_best_ratio(x, bs)

    def test_search_bound(self):
        x = set_from_elements(F101, list(range(1, 23)))
        with pytest.raises(SearchBoundExceeded):
            find_plunneke_witness_exhaustive(x, [fp(F101, 1, 2)])

    def test_tie_breaks_are_deterministic(self):
        # all singletons tie at ratio |B|; larger-cardinality subsets can
        # tie too; the reported witness must be reproducible
        x = fp(F11, 1, 2, 3)
        b = fp(F11, 0)
        w1 = find_plunneke_witness_exhaustive(x, [b])
        w2 = find_plunneke_witness_exhaustive(x, [b])
        assert w1.subset == w2.subset
        # translation by a singleton: every subset has ratio 1; maximal
        # cardinality wins the tie, so the witness is all of X
        assert w1.subset == x


class TestGreedyWitness:
    def test_no_improving_move_returns_x(self):
        x = fp(F7, 0, 1)
        w = find_plunneke_witness_greedy(x, [x])
        assert w.subset == x

    def test_singleton_translate_constant_one(self):
        rng = SplitMix64(34)
        for _ in range(50):
            x = random_set(rng, F101, 10)
            b = random_set(rng, F101, 1)
            w = find_plunneke_witness_greedy(x, [b])
            assert w.measured_constant <= 1

    def test_never_beats_exhaustive(self):
        rng = SplitMix64(35)
        for _ in range(150):
            x = random_set(rng, F61, 12)
            k = 1 + rng.below(3)
            bs = [random_set(rng, F61, 8) for _ in range(k)]
            exh = find_plunneke_witness_exhaustive(x, bs)
            gre = find_plunneke_witness_greedy(x, bs)
            assert gre.measured_constant >= exh.measured_constant


class TestCor14:
    def test_spec_instance(self):
        chk = cor14_bound(fp(F11, 0, 1, 2), [fp(F11, 0, 1), fp(F11, 0, 3)])
        assert (chk.lhs, chk.rhs, chk.holds) == (4, Fraction(8), True)

    def test_k1(self):
        x = fp(F11, 0, 1, 2)
        b = fp(F11, 2, 5)
        chk = cor14_bound(x, [b])
        assert chk.lhs == b.card <= chk.rhs
        assert chk.holds

    def test_all_singletons(self):
        x = fp(F11, 0)
        chk = cor14_bound(x, [x, x])
        assert (chk.lhs, chk.rhs, chk.holds) == (1, Fraction(1), True)

    def test_random_battery(self):
        rng = SplitMix64(36)
        for _ in range(300):
            x = random_set(rng, F101, 12)
            k = 1 + rng.below(3)
            bs = [random_set(rng, F101, 12) for _ in range(k)]
            assert cor14_bound(x, bs).holds

    def test_monotone_in_b(self):
        rng = SplitMix64(37)
        for _ in range(50):
            x = random_set(rng, F101, 8)
            b1 = random_set(rng, F101, 6)
            b2 = random_set(rng, F101, 6)
            extra = 1 + rng.below(100)
            grown = set_from_elements(F101, list(b2.elements()) + [extra])
            small = cor14_bound(x, [b1, b2]).rhs
            large = cor14_bound(x, [b1, grown]).rhs
            assert large >= small


class TestRefinement:
    def test_single_round_when_first_witness_is_large(self):
        x = fp(F11, 0, 1, 2)
        res = refine_large_subset(x, [fp(F11, 0, 1), fp(F11, 0, 3)])
        assert res.subset == x
        assert len(res.pieces) == 1
        assert res.measured_constant <= 8
        assert 2 * res.subset.card > x.card

    def test_random_battery(self):
        rng = SplitMix64(38)
        for _ in range(500):
            x = random_set(rng, F61, 12)
            k = 1 + rng.below(3)
            bs = [random_set(rng, F61, 8) for _ in range(k)]
            res = refine_large_subset(x, bs)
            assert 2 * res.subset.card > x.card
            assert res.subset.is_subset_of(x)
            # pieces are disjoint and cover the union exactly
            assert sum(pc.card for pc in res.pieces) == res.subset.card
            bits = 0
            for pc in res.pieces:
                bits |= pc.bits
            assert bits == res.subset.bits
            assert res.exhaustive_mode
            assert res.measured_constant <= Fraction(2 ** (k + 1))


class TestCor16:
    def test_spec_f7_instance(self):
        chk = cor16_bounds(1, 2, fp(F7, 1, 2, 4))
        assert chk.sum_bound_holds and chk.diff_bound_holds
        assert chk.details["card_sum"] == 6
        assert chk.details["card_diff"] == 7
        assert chk.details["bound"] == Fraction(36, 3)

    def test_equal_dilates(self):
        a = fp(F101, 3, 17, 40)
        chk = cor16_bounds(5, 5, a)
        assert chk.sum_bound_holds and chk.diff_bound_holds
        assert chk.details["card_intersection"] == a.card

    def test_gp_instance(self):
        a = fp(F101, 1, 2, 4, 8, 16)
        chk = cor16_bounds(1, 2, a)
        assert chk.details["card_intersection"] == 4
        assert chk.details["bound"] == Fraction(225, 4)
        assert chk.details["card_sum"] <= 25
        assert chk.sum_bound_holds and chk.diff_bound_holds

    def test_zero_rejected(self):
        with pytest.raises(ZeroDilate):
            cor16_bounds(0, 2, fp(F7, 1, 2))

    def test_empty_intersection(self):
        # 1*{1} and 2*{1} are disjoint singletons
        with pytest.raises(EmptyIntersection):
            cor16_bounds(1, 2, fp(F7, 1))

    def test_random_battery(self):
        rng = SplitMix64(39)
        checked = 0
        for trial in range(400):
            a = random_set(rng, F101, 12)
            if trial % 2:
                # members guarantee a nonempty intersection: xy lands in both
                x = a.elements()[rng.below(a.card)]
                y = a.elements()[rng.below(a.card)]
            else:
                x = 1 + rng.below(100)
                y = 1 + rng.below(100)
            try:
                chk = cor16_bounds(x, y, a)
            except EmptyIntersection:
                continue
            checked += 1
            assert chk.sum_bound_holds and chk.diff_bound_holds
        assert checked >= 200
