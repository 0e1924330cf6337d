"""Ruzsa triangle inequality, Plünnecke-Ruzsa witness extraction, and the
iterated large-subset refinement, all in constructive/verifying form.

Every check returns the measured left/right sides so callers (and the
certification harness) can record implied constants instead of trusting
asymptotic notation.  The exhaustive witness finder realizes the
classical existence statement as a concrete searchable certificate; the
greedy finder is its scalable companion and is allowed to miss, in which
case the reported constant simply exceeds 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _kernels as kernels
from .errors import (
    EmptyIntersection,
    EmptyPivot,
    SearchBoundExceeded,
    ZeroDilate,
)
from .field import FpSet
from .setops import _common_field, difference_set, dilate, sumset

# Exhaustive subset search scans 2^|X| - 1 candidates; capped here.
EXHAUSTIVE_LIMIT = 20


class InequalityCheck(NamedTuple):
    lhs: int
    rhs: Fraction
    holds: bool


class Cor16Check(NamedTuple):
    sum_bound_holds: bool
    diff_bound_holds: bool
    details: dict


@dataclass(frozen=True)
class PlunnekeWitness:
    """Subset X1 of X with |X1 + B1 + ... + Bk| <= const * prod(alpha) * |X1|."""

    subset: FpSet
    alphas: tuple[Fraction, ...]
    measured_constant: Fraction
    sum_card: int


@dataclass(frozen=True)
class RefinementResult:
    """Union X' of extracted pieces with |X'| > |X|/2."""

    subset: FpSet
    pieces: tuple[FpSet, ...]
    measured_constant: Fraction
    exhaustive_mode: bool
    sum_card: int


def ruzsa_triangle_check(x: FpSet, y: FpSet, z: FpSet) -> InequalityCheck:
    """|Y-Z| <= |Y-X| |X-Z| / |X|; holds for every choice of sets."""
    _common_field(x, y, z)
    if x.card == 0:
        raise EmptyPivot("triangle pivot X is empty")
    lhs = difference_set(y, z).card
    rhs = Fraction(difference_set(y, x).card * difference_set(x, z).card, x.card)
    return InequalityCheck(lhs, rhs, lhs <= rhs)


def _validate_bs(x: FpSet, bs) -> list[FpSet]:
    bs = list(bs)
    if not bs:
        raise ValueError("need at least one summand set")
    _common_field(x, *bs)
    for b in bs:
        if b.card == 0:
            raise EmptyPivot("empty summand set")
    return bs


def _fold_sumset(sets) -> FpSet:
    acc = sets[0]
    for s in sets[1:]:
        acc = sumset(acc, s)
    return acc


def _witness_from_subset(x: FpSet, bs, subset: FpSet, alphas) -> PlunnekeWitness:
    total = sumset(subset, _fold_sumset(bs)) if bs else subset
    prod_num = 1
    prod_den = 1
    for a in alphas:
        prod_num *= a.numerator
        prod_den *= a.denominator
    measured = Fraction(total.card * prod_den, prod_num * subset.card)
    return PlunnekeWitness(subset, tuple(alphas), measured, total.card)


def find_plunneke_witness_exhaustive(x: FpSet, bs) -> PlunnekeWitness:
    """Best witness over all nonempty subsets of X.

    Minimizes |X1 + sum(B)| / |X1|; ties go to larger |X1|, then to the
    lexicographically smallest sorted element tuple.  The measured
    constant never exceeds 1 (the optimal subset achieves the product
    bound); |X| is capped at EXHAUSTIVE_LIMIT.
    """
    bs = _validate_bs(x, bs)
    if x.card == 0:
        raise EmptyPivot("witness search over empty X")
    if x.card > EXHAUSTIVE_LIMIT:
        raise SearchBoundExceeded(f"|X| = {x.card} exceeds {EXHAUSTIVE_LIMIT}")
    field = x.field
    p = field.p
    total = _fold_sumset(bs)
    xs = x.elements()
    shifted = [kernels.cyclic_shift(total.bits, e, p) for e in xs]
    best_mask, _ = kernels.best_subset_union(shifted, p)
    chosen = [xs[i] for i in range(len(xs)) if (best_mask >> i) & 1]
    subset = FpSet.from_elements(field, chosen)
    alphas = [Fraction(sumset(x, b).card, x.card) for b in bs]
    return _witness_from_subset(x, bs, subset, alphas)


def find_plunneke_witness_greedy(x: FpSet, bs) -> PlunnekeWitness:
    """Steepest-descent single-element removals on |Z + B1| / |Z|.

    Scales past the exhaustive cap but may return a constant above 1;
    callers must branch on measured_constant.
    """
    bs = _validate_bs(x, bs)
    if x.card == 0:
        raise EmptyPivot("witness search over empty X")
    b1 = bs[0]
    current = x
    ratio = Fraction(sumset(current, b1).card, current.card)
    while current.card > 1:
        best_elem = None
        best_ratio = ratio
        for e in current.elements():
            trial = FpSet(x.field, current.bits & ~(1 << e))
            r = Fraction(sumset(trial, b1).card, trial.card)
            if r < best_ratio:
                best_ratio = r
                best_elem = e
        if best_elem is None:
            break
        current = FpSet(x.field, current.bits & ~(1 << best_elem))
        ratio = best_ratio
    alphas = [Fraction(sumset(x, b).card, x.card) for b in bs]
    return _witness_from_subset(x, bs, current, alphas)


def cor14_bound(x: FpSet, bs) -> InequalityCheck:
    """|B1 + ... + Bk| <= prod |X + Bi| / |X|^(k-1); always holds."""
    bs = _validate_bs(x, bs)
    if x.card == 0:
        raise EmptyPivot("pivot X is empty")
    lhs = _fold_sumset(bs).card
    num = 1
    for b in bs:
        num *= sumset(x, b).card
    rhs = Fraction(num, x.card ** (len(bs) - 1))
    return InequalityCheck(lhs, rhs, lhs <= rhs)


def refine_large_subset(x: FpSet, bs) -> RefinementResult:
    """Extract disjoint witness pieces until their union exceeds |X|/2.

    Each piece comes from the unconsumed remainder, whose size never
    drops below |X|/2 while extraction continues, so each per-piece ratio
    is at most twice the ratio on X.  With the exhaustive inner finder
    the measured constant is provably at most 2^(k+1).
    """
    bs = _validate_bs(x, bs)
    if x.card == 0:
        raise EmptyPivot("refinement over empty X")
    field = x.field
    k = len(bs)
    pieces: list[FpSet] = []
    union = FpSet(field, 0)
    exhaustive = True
    while 2 * union.card <= x.card:
        remainder = x.without(union)
        if remainder.card <= EXHAUSTIVE_LIMIT:
            w = find_plunneke_witness_exhaustive(remainder, bs)
        else:
            w = find_plunneke_witness_greedy(remainder, bs)
            exhaustive = False
        pieces.append(w.subset)
        union = union.union(w.subset)
    total_card = sumset(union, _fold_sumset(bs)).card
    num = 1
    for b in bs:
        num *= sumset(x, b).card
    bound = Fraction(num, x.card ** (k - 1))
    measured = Fraction(total_card) / bound
    return RefinementResult(union, tuple(pieces), measured, exhaustive, total_card)


def cor16_bounds(a: int, b: int, s: FpSet) -> Cor16Check:
    """|aA+bA| and |aA-bA| are both at most |A+A|^2 / |aA ∩ bA|."""
    p = s.field.p
    a %= p
    b %= p
    if a == 0 or b == 0:
        raise ZeroDilate("dilate coefficient is zero")
    da = dilate(a, s)
    db = dilate(b, s)
    inter = da.intersection(db).card
    if inter == 0:
        raise EmptyIntersection("aA and bA are disjoint")
    sum_card = sumset(da, db).card
    diff_card = difference_set(da, db).card
    card_ss = sumset(s, s).card
    bound = Fraction(card_ss**2, inter)
    return Cor16Check(
        sum_card <= bound,
        diff_card <= bound,
        {
            "card_sum": sum_card,
            "card_diff": diff_card,
            "card_intersection": inter,
            "card_sumset": card_ss,
            "bound": bound,
        },
    )
