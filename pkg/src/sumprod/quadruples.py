"""Quadruple selection for the two cases of the Glibichuk-Konyagin
construction.

NONFULL case: the ratio-of-differences set misses some field element, so
a quadruple (a1,a2,b1,b2) exists with xi = 1 + (b1-b2)/(a1-a2) outside
that set, which forces |A' + xi*A'| = |A'|^2 exactly for any subset A'.

FULL case: the ratio set covers the field; a ratio xi = (a1-a2)/(b1-b2)
with the fewest difference-quadruple representations is selected, which
caps the cross additive energy at 2|A1|^2 and hence forces
|A1 + xi*A1| >= |A1|^2 / 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    FullRatioSet,
    NotFullRatioSet,
    NotSubset,
    SetTooLarge,
    SetTooSmall,
    WrongCase,
)
from .field import FpSet
from .setops import dilate, ratio_of_differences, sumset

NONFULL = "NONFULL"
FULL = "FULL"


@dataclass(frozen=True)
class QuadrupleChoice:
    a1: int
    a2: int
    b1: int
    b2: int
    case_tag: str
    xi: int
    base: FpSet  # the A1 the quadruple was selected from


def find_quadruple_nonfull(a1set: FpSet) -> QuadrupleChoice:
    """Lexicographically first quadruple with 1+(b1-b2)/(a1-a2) off the
    ratio set.  Exists whenever the ratio set is not the whole field:
    the set contains 0, so were it closed under adding 1 it would be
    everything."""
    if a1set.card < 2:
        raise SetTooSmall("quadruple selection needs at least 2 elements")
    field = a1set.field
    p = field.p
    ratios = ratio_of_differences(a1set)
    if ratios.card == p:
        raise FullRatioSet("ratio-of-differences set covers the field")
    view = ratios.member_view()
    elems = a1set.elements()
    for a1 in elems:
        for a2 in elems:
            if a1 == a2:
                continue
            inv = field.inv(a1 - a2)
            for b1 in elems:
                for b2 in elems:
                    xi = (1 + (b1 - b2) * inv) % p
                    if not (view[xi >> 3] >> (xi & 7)) & 1:
                        return QuadrupleChoice(a1, a2, b1, b2, NONFULL, xi, a1set)
    raise AssertionError("nonfull ratio set without admissible quadruple")


def verify_gk_lower_bound(aprime: FpSet, q: QuadrupleChoice):
    """|(a1-a2)A' + (a1-a2)A' + (b1-b2)A'| >= |A'|^2 for A' inside the
    quadruple's base set; returns (size, holds)."""
    if q.case_tag != NONFULL:
        raise WrongCase(f"expected a {NONFULL} quadruple, got {q.case_tag}")
    if not aprime.is_subset_of(q.base):
        raise NotSubset("A' is not contained in the quadruple's base set")
    p = aprime.field.p
    d1 = (q.a1 - q.a2) % p
    d2 = (q.b1 - q.b2) % p
    part = dilate(d1, aprime)
    two_fold = sumset(part, part)
    # b1 == b2 cannot come out of the selector (xi would be 1, which is
    # always a ratio), but handle it: the third summand is then {0}.
    three_fold = sumset(two_fold, dilate(d2, aprime)) if d2 else two_fold
    size = three_fold.card
    return size, size >= aprime.card**2


def _difference_counts(s: FpSet) -> np.ndarray:
    p = s.field.p
    elems = np.asarray(s.elements(), dtype=np.int64)
    counts = np.zeros(p, dtype=np.int64)
    for e in elems.tolist():
        counts += np.bincount((e - elems) % p, minlength=p)
    return counts


def _rep_counts_all(s: FpSet) -> np.ndarray:
    """rep[xi] = #{(a1,a2,b1,b2) : a1-a2 = xi(b1-b2), b1 != b2} for all xi.

    Computed in the dlog domain as a cyclic cross-correlation of the
    difference-count vector; FFT route above the direct-pair threshold.
    Counts are integers well inside float53, so rounding is exact.
    """
    field = s.field
    p = field.p
    c = _difference_counts(s)
    nz = np.nonzero(c[1:])[0] + 1
    rep = np.zeros(p, dtype=np.int64)
    rep[0] = int(c[0]) * int(c[1:].sum())
    if len(nz) ** 2 <= 4_000_000:
        for d in nz.tolist():
            ratios = (d * np.asarray([field.inv(int(e)) for e in nz.tolist()], dtype=np.int64)) % p
            np.add.at(rep, ratios, c[d] * c[nz])
        return rep
    field.ensure_dlog()
    m = p - 1
    cl = c[field.pow_table]  # counts indexed by dlog exponent
    f = np.fft.rfft(cl, m)
    corr = np.fft.irfft(f * np.conj(f), m)  # corr[j] = sum_k cl[k+j] cl[k]
    vals = np.rint(corr).astype(np.int64)
    rep[field.pow_table] = vals
    return rep


def find_quadruple_full(a1set: FpSet) -> QuadrupleChoice:
    """Ratio with the fewest representations, realized by its
    lexicographically first quadruple.  Averaging over the p-1 realized
    ratios bounds the minimum by |A1|^4 / p < |A1|^2."""
    if a1set.card < 2:
        raise SetTooSmall("quadruple selection needs at least 2 elements")
    field = a1set.field
    p = field.p
    if a1set.card**2 >= p:
        raise SetTooLarge(f"|A1|^2 = {a1set.card ** 2} >= p = {p}")
    ratios = ratio_of_differences(a1set)
    if ratios.card != p:
        raise NotFullRatioSet("ratio-of-differences set misses an element")
    rep = _rep_counts_all(a1set)
    best = int(rep[1:].min())
    elems = a1set.elements()
    for a1 in elems:
        for a2 in elems:
            if a1 == a2:
                continue
            diff = (a1 - a2) % p
            for b1 in elems:
                for b2 in elems:
                    if b1 == b2:
                        continue
                    xi = diff * field.inv(b1 - b2) % p
                    if rep[xi] == best:
                        return QuadrupleChoice(a1, a2, b1, b2, FULL, xi, a1set)
    raise AssertionError("full ratio set without realized minimal ratio")
