"""Reference implementations by direct enumeration.

These are the oracle route: plain double/quadruple loops over plain
Python sets, never touching the bitset kernels or dlog tables.  The
benchmark and oracle-suite commands pit the fast kernels against these;
the test suite does the same.
"""

from __future__ import annotations

from .field import FpSet

# Above this many element pairings the naive route is skipped by callers
# (benchmarks and oracle batteries); enumeration stays exact below it.
PAIRING_LIMIT = 10_000_000


def sumset(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {(x + y) % p for x in a.elements() for y in b.elements()}


def difference_set(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {(x - y) % p for x in a.elements() for y in b.elements()}


def product_set(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {x * y % p for x in a.elements() for y in b.elements()}


def dilate(c: int, a: FpSet) -> set[int]:
    p = a.field.p
    return {c * x % p for x in a.elements()}


def ratio_of_differences(a: FpSet) -> set[int]:
    p = a.field.p
    elems = a.elements()
    out = set()
    for x in elems:
        for y in elems:
            for z in elems:
                for w in elems:
                    if z != w:
                        out.add((x - y) * pow(z - w, p - 2, p) % p)
    return out


def dilate_intersection_size(a: int, b: int, s: FpSet) -> int:
    p = s.field.p
    return len({a * x % p for x in s.elements()} & {b * x % p for x in s.elements()})


def multiplicative_energy(s: FpSet) -> int:
    """Double loop over pairs counting product representations."""
    p = s.field.p
    counts: dict[int, int] = {}
    for x in s.elements():
        for y in s.elements():
            v = x * y % p
            counts[v] = counts.get(v, 0) + 1
    return sum(c * c for c in counts.values())


def multiplicative_energy_quadruple(s: FpSet) -> int:
    """Literal quadruple loop; use only on tiny sets."""
    p = s.field.p
    elems = s.elements()
    total = 0
    for a in elems:
        for b in elems:
            for c in elems:
                for d in elems:
                    if a * c % p == b * d % p:
                        total += 1
    return total


def additive_energy_cross(s: FpSet, xi: int) -> int:
    p = s.field.p
    counts: dict[int, int] = {}
    for x in s.elements():
        for y in s.elements():
            v = (x + xi * y) % p
            counts[v] = counts.get(v, 0) + 1
    return sum(c * c for c in counts.values())


def ratio_representation_count(s: FpSet, xi: int) -> int:
    """Quadruple loop; use only on small sets."""
    p = s.field.p
    elems = s.elements()
    total = 0
    for a1 in elems:
        for a2 in elems:
            for b1 in elems:
                for b2 in elems:
                    if b1 != b2 and (a1 - a2) % p == xi * (b1 - b2) % p:
                        total += 1
    return total
