"""Randomized exact-verification batteries.

Each battery samples seeded instances and checks either agreement of the
fast kernels with naive enumeration or an inequality that is a theorem
with an explicit constant.  Every battery must pass 100%: a single
failure is an implementation bug (or a falsified theorem, which would be
more interesting).
"""

from __future__ import annotations

from fractions import Fraction

from . import naive, setops
from .errors import InvalidSpec
from .field import FpSet, make_field
from .plunneke import (
    cor14_bound,
    cor16_bounds,
    find_plunneke_witness_exhaustive,
    find_plunneke_witness_greedy,
    refine_large_subset,
    ruzsa_triangle_check,
)
from .quadruples import find_quadruple_full, find_quadruple_nonfull, verify_gk_lower_bound
from .rng import SplitMix64, derive_seed
from .setops import (
    SignedDilate,
    additive_energy_cross,
    difference_set,
    dilate,
    dilate_intersection_size,
    multiplicative_energy,
    product_set,
    ratio_of_differences,
    ratio_representation_count,
    signed_combination,
    sumset,
)


_PRIME_CACHE: dict[int, list[int]] = {}
_FIELD_CACHE: dict[int, object] = {}


def sieve_primes(limit: int) -> list[int]:
    if limit not in _PRIME_CACHE:
        flags = bytearray([1]) * (limit + 1)
        flags[0:2] = b"\x00\x00"
        for i in range(2, int(limit**0.5) + 1):
            if flags[i]:
                flags[i * i :: i] = b"\x00" * len(flags[i * i :: i])
        _PRIME_CACHE[limit] = [i for i in range(limit + 1) if flags[i]]
    return _PRIME_CACHE[limit]


def _field(p):
    if p not in _FIELD_CACHE:
        _FIELD_CACHE[p] = make_field(p)
    return _FIELD_CACHE[p]


def _random_prime(rng, max_p, min_p=5):
    primes = [q for q in sieve_primes(max_p) if q >= min_p]
    return primes[rng.below(len(primes))]


def _random_set(rng, field, max_card, min_card=1) -> FpSet:
    p = field.p
    hi = min(max_card, p - 1)
    lo = min(min_card, hi)
    card = lo + rng.below(hi - lo + 1)
    elems = set()
    while len(elems) < card:
        elems.add(1 + rng.below(p - 1))
    return FpSet.from_elements(field, sorted(elems))


def battery_kernel_sets(rng, instances, max_p, max_card):
    """Bit-vector sumset/difference/product/dilate vs naive enumeration."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, max_card)
        b = _random_set(rng, field, max_card)
        c = 1 + rng.below(field.p - 1)
        ok = (
            set(sumset(a, b).elements()) == naive.sumset(a, b)
            and set(difference_set(a, b).elements()) == naive.difference_set(a, b)
            and set(product_set(a, b).elements()) == naive.product_set(a, b)
            and set(dilate(c, a).elements()) == naive.dilate(c, a)
        )
        passed += ok
    return passed, instances


def battery_kernel_counts(rng, instances, max_p, max_card):
    """Counting operations vs naive double/quadruple loops."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, max_card, min_card=2)
        x = 1 + rng.below(field.p - 1)
        y = 1 + rng.below(field.p - 1)
        xi = 1 + rng.below(field.p - 1)
        ok = (
            dilate_intersection_size(x, y, a) == naive.dilate_intersection_size(x, y, a)
            and multiplicative_energy(a) == naive.multiplicative_energy(a)
            and additive_energy_cross(a, xi) == naive.additive_energy_cross(a, xi)
        )
        if ok and a.card <= 8:
            ok = ratio_representation_count(a, xi) == naive.ratio_representation_count(a, xi)
            if ok:
                ok = multiplicative_energy(a) == naive.multiplicative_energy_quadruple(a)
        passed += ok
    return passed, instances


def battery_cauchy_davenport(rng, instances, max_p, max_card):
    """|A+B| >= min(p, |A|+|B|-1)."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, max_card)
        b = _random_set(rng, field, max_card)
        passed += sumset(a, b).card >= min(field.p, a.card + b.card - 1)
    return passed, instances


def battery_dilation_invariance(rng, instances, max_p, max_card):
    """|cA| = |A| and |cA + cB| = |A + B| for units c."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, max_card)
        b = _random_set(rng, field, max_card)
        c = 1 + rng.below(field.p - 1)
        passed += (
            dilate(c, a).card == a.card
            and sumset(dilate(c, a), dilate(c, b)).card == sumset(a, b).card
        )
    return passed, instances


def battery_energy_identity(rng, instances, max_p, max_card):
    """Multiplicative energy equals the sum of |aA ∩ bA| over pairs."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, min(max_card, 10))
        total = sum(
            dilate_intersection_size(x, y, a)
            for x in a.elements()
            for y in a.elements()
        )
        passed += total == multiplicative_energy(a)
    return passed, instances


def battery_gk_uniqueness(rng, instances, max_p, max_card):
    """xi outside the ratio set forces |A + xi*A| = |A|^2 exactly,
    and the cross energy is exactly |A|^2."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, max_card, min_card=2)
        ratios = ratio_of_differences(a)
        if ratios.card == field.p:
            passed += 1  # vacuous: no xi to test
            continue
        xi = next(e for e in range(field.p) if e not in ratios)
        passed += (
            sumset(a, dilate(xi, a)).card == a.card**2
            and additive_energy_cross(a, xi) == a.card**2
            and ratio_representation_count(a, xi) == 0
        )
    return passed, instances


def battery_ruzsa_triangle(rng, instances, max_p, max_card):
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        x = _random_set(rng, field, max_card)
        y = _random_set(rng, field, max_card)
        z = _random_set(rng, field, max_card)
        passed += ruzsa_triangle_check(x, y, z).holds
    return passed, instances


def battery_cor14(rng, instances, max_p, max_card):
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        x = _random_set(rng, field, max_card)
        k = 1 + rng.below(3)
        bs = [_random_set(rng, field, max_card) for _ in range(k)]
        passed += cor14_bound(x, bs).holds
    return passed, instances


def battery_cor16(rng, instances, max_p, max_card):
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, max_card)
        x = 1 + rng.below(field.p - 1)
        y = 1 + rng.below(field.p - 1)
        if dilate(x, a).intersection(dilate(y, a)).card == 0:
            passed += 1  # vacuous: precondition not met
            continue
        chk = cor16_bounds(x, y, a)
        passed += chk.sum_bound_holds and chk.diff_bound_holds
    return passed, instances


def battery_plunneke_exhaustive(rng, instances, max_p, max_card):
    """The optimal witness achieves the product bound (constant <= 1)."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        x = _random_set(rng, field, min(max_card, 12))
        k = 1 + rng.below(3)
        bs = [_random_set(rng, field, max_card) for _ in range(k)]
        w = find_plunneke_witness_exhaustive(x, bs)
        passed += w.measured_constant <= 1 and w.subset.card > 0 and w.subset.is_subset_of(x)
    return passed, instances


def battery_greedy_vs_exhaustive(rng, instances, max_p, max_card):
    """Local search never beats the full subset scan."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        x = _random_set(rng, field, min(max_card, 12))
        k = 1 + rng.below(3)
        bs = [_random_set(rng, field, max_card) for _ in range(k)]
        exh = find_plunneke_witness_exhaustive(x, bs)
        gre = find_plunneke_witness_greedy(x, bs)
        passed += gre.measured_constant >= exh.measured_constant
    return passed, instances


def battery_refinement(rng, instances, max_p, max_card):
    """|X'| > |X|/2, disjoint pieces covering X', constant <= 2^(k+1)."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        x = _random_set(rng, field, min(max_card, 12))
        k = 1 + rng.below(3)
        bs = [_random_set(rng, field, max_card) for _ in range(k)]
        res = refine_large_subset(x, bs)
        disjoint = sum(pc.card for pc in res.pieces) == res.subset.card
        cover = res.subset.bits == _union_bits(res.pieces)
        ok = (
            2 * res.subset.card > x.card
            and disjoint
            and cover
            and res.subset.is_subset_of(x)
        )
        if res.exhaustive_mode:
            ok = ok and res.measured_constant <= Fraction(2 ** (k + 1))
        passed += ok
    return passed, instances


def _union_bits(pieces):
    bits = 0
    for pc in pieces:
        bits |= pc.bits
    return bits


def battery_gk_nonfull(rng, instances, max_p, max_card):
    """Selected xi is off the ratio set; |A1 + xi*A1| = |A1|^2; the lower
    bound holds on the refined large subset."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a1 = _random_set(rng, field, max_card, min_card=2)
        ratios = ratio_of_differences(a1)
        if ratios.card == field.p:
            passed += 1  # vacuous: wrong case
            continue
        q = find_quadruple_nonfull(a1)
        if q.xi in ratios or sumset(a1, dilate(q.xi, a1)).card != a1.card**2:
            continue
        p = field.p
        d1 = (q.a1 - q.a2) % p
        d2 = (q.b1 - q.b2) % p
        x = dilate(d1, a1)
        ref = refine_large_subset(x, [x, dilate(d2, a1)])
        aprime = dilate(field.inv(d1), ref.subset)
        _size, holds = verify_gk_lower_bound(aprime, q)
        passed += holds and 2 * aprime.card > a1.card
    return passed, instances


def battery_gk_full(rng, instances, max_p, max_card):
    """On full-ratio-set instances: representation count <= |A1|^2, the
    cross-energy identity, and |A1 + xi*A1| >= |A1|^2 / 2."""
    passed = 0
    checked = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        max_n = int((field.p - 1) ** 0.5)
        if max_n < 2:
            continue
        a1 = _random_set(rng, field, min(max_card, max_n), min_card=2)
        if ratio_of_differences(a1).card != field.p:
            continue
        checked += 1
        q = find_quadruple_full(a1)
        rep = ratio_representation_count(a1, q.xi)
        cross = additive_energy_cross(a1, q.xi)
        ok = (
            rep <= a1.card**2
            and cross == a1.card**2 + rep
            and 2 * sumset(a1, dilate(q.xi, a1)).card >= a1.card**2
        )
        passed += ok
    return passed, checked


def battery_signed_combination(rng, instances, max_p, max_card):
    """Signed dilate combinations vs naive enumeration."""
    passed = 0
    for _ in range(instances):
        field = _field(_random_prime(rng, max_p))
        a = _random_set(rng, field, min(max_card, 10))
        k = 1 + rng.below(3)
        terms = []
        expected = None
        p = field.p
        for _i in range(k):
            coeff = 1 + rng.below(p - 1)
            sign = 1 if rng.below(2) else -1
            terms.append(SignedDilate(coeff, sign, a))
            part = {sign * coeff * e % p for e in a.elements()}
            expected = part if expected is None else {
                (u + v) % p for u in expected for v in part
            }
        passed += set(signed_combination(terms).elements()) == expected
    return passed, instances


BATTERIES = (
    ("kernel_sets", battery_kernel_sets),
    ("kernel_counts", battery_kernel_counts),
    ("signed_combination", battery_signed_combination),
    ("cauchy_davenport", battery_cauchy_davenport),
    ("dilation_invariance", battery_dilation_invariance),
    ("energy_identity", battery_energy_identity),
    ("gk_uniqueness", battery_gk_uniqueness),
    ("ruzsa_triangle", battery_ruzsa_triangle),
    ("cor14", battery_cor14),
    ("cor16", battery_cor16),
    ("plunneke_exhaustive", battery_plunneke_exhaustive),
    ("greedy_vs_exhaustive", battery_greedy_vs_exhaustive),
    ("refinement", battery_refinement),
    ("gk_nonfull", battery_gk_nonfull),
    ("gk_full", battery_gk_full),
)


def run_suite(instances, seed, max_p, max_card, emit=print) -> bool:
    """Run every battery; returns True iff all pass 100%."""
    if instances < 1:
        raise InvalidSpec("need at least one instance")
    if max_p < 5:
        raise InvalidSpec("max-p must be at least 5")
    if max_card < 1:
        raise InvalidSpec("max-card must be at least 1")
    all_ok = True
    for i, (name, fn) in enumerate(BATTERIES):
        rng = SplitMix64(derive_seed(seed, i))
        passed, total = fn(rng, instances, max_p, max_card)
        ok = passed == total
        all_ok = all_ok and ok
        emit(f"{name}: {passed}/{total}{'' if ok else '  FAIL'}")
    return all_ok
