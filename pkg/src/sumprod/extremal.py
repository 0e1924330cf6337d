"""Local search for sets with small max(|A+A|, |AA|).

Single-element swap moves driven by the seeded generator: each iteration
proposes replacing one member with one nonmember and keeps the move if
the objective does not get worse (plateau moves allowed so the walk can
slide along level sets).  Deterministic for a fixed seed.
"""

from __future__ import annotations

import math

from .errors import InvalidSpec
from .field import FpSet, make_field
from .rng import SplitMix64
from .setops import product_set, sumset


def _objective(a: FpSet) -> int:
    return max(sumset(a, a).card, product_set(a, a).card)


def run_extremal(p, n, iters, seed, emit=None):
    """Minimize max(|A+A|, |AA|) over n-element subsets of F_p*."""
    if n < 2:
        raise InvalidSpec("extremal search needs n >= 2")
    field = make_field(p)
    if n * n >= p:
        raise InvalidSpec(f"n^2 = {n * n} >= p = {p}")
    rng = SplitMix64(seed)
    elems = set()
    while len(elems) < n:
        elems.add(1 + rng.below(p - 1))
    current = FpSet.from_elements(field, sorted(elems))
    obj = _objective(current)
    best, best_obj = current, obj
    accepted = 0
    improvements = 0
    last_improvement = 0
    for it in range(1, iters + 1):
        members = current.elements()
        out = members[rng.below(n)]
        cand = 1 + rng.below(p - 1)
        if cand in current:
            continue
        trial = FpSet(field, (current.bits & ~(1 << out)) | (1 << cand))
        t_obj = _objective(trial)
        if t_obj <= obj:
            accepted += 1
            if t_obj < obj:
                improvements += 1
                last_improvement = it
            current, obj = trial, t_obj
            if t_obj < best_obj:
                best, best_obj = trial, t_obj
    card_sum = sumset(best, best).card
    card_prod = product_set(best, best).card
    report = {
        "p": p,
        "n": n,
        "iters": iters,
        "seed": seed,
        "best": {
            "elements": list(best.elements()),
            "cardSumset": card_sum,
            "cardProductset": card_prod,
            "objective": best_obj,
            "exponent": math.log(best_obj) / math.log(n),
        },
        "trajectory": {
            "acceptedMoves": accepted,
            "improvements": improvements,
            "lastImprovementIter": last_improvement,
        },
    }
    return report
