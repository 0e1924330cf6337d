"""Set-valued and counting operations: sumsets, product sets, dilates,
signed combinations, ratio-of-differences sets, and energy counts.

All operations are pure functions of immutable inputs.  Multiplicative
operations reject 0 as an operand or member instead of special-casing it;
the one exception is ``product_set``, which handles a 0 member by
splitting it off before the dlog fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import FieldMismatch, SetTooSmall, ZeroDilate, ZeroInSet
from .field import FpSet, PrimeField

# Pairwise numpy tables are built in row chunks of at most this many cells.
_CHUNK_CELLS = 1 << 21


def _common_field(*sets: FpSet) -> PrimeField:
    field = sets[0].field
    for s in sets[1:]:
        if s.field.p != field.p:
            raise FieldMismatch(f"mixed moduli {field.p} and {s.field.p}")
    return field


def _empty(field: PrimeField) -> FpSet:
    return FpSet(field, 0)


def sumset(a: FpSet, b: FpSet) -> FpSet:
    """{x + y mod p : x in a, y in b}."""
    field = _common_field(a, b)
    if a.card == 0 or b.card == 0:
        return _empty(field)
    small, big = (a, b) if a.card <= b.card else (b, a)
    return FpSet(field, kernels.sumset_bits(small.elements(), big.bits, field.p))


def _negate(a: FpSet) -> FpSet:
    p = a.field.p
    return FpSet.from_elements(a.field, [(p - e) % p for e in a.elements()])


def difference_set(a: FpSet, b: FpSet) -> FpSet:
    """{x - y mod p : x in a, y in b}."""
    _common_field(a, b)
    return sumset(a, _negate(b))


def dilate(c: int, a: FpSet) -> FpSet:
    """{c*x mod p}; cardinality-preserving since c is a unit."""
    p = a.field.p
    c %= p
    if c == 0:
        raise ZeroDilate("dilation by 0")
    return FpSet.from_elements(a.field, [c * e % p for e in a.elements()])


def product_set(a: FpSet, b: FpSet) -> FpSet:
    """{x * y mod p}; nonzero parts go through dlog tables, 0 split off."""
    field = _common_field(a, b)
    p = field.p
    if a.card == 0 or b.card == 0:
        return _empty(field)
    zero_out = (0 in a) or (0 in b)
    ea = [e for e in a.elements() if e]
    eb = [e for e in b.elements() if e]
    if not ea or not eb:
        return FpSet(field, 1 if zero_out else 0)
    field.ensure_dlog()
    m = p - 1
    dlog = field.dlog
    la = dlog[np.asarray(ea, dtype=np.int64)]
    lb = dlog[np.asarray(eb, dtype=np.int64)]
    if len(la) > len(lb):
        la, lb = lb, la
    mask_b = 0
    for e in lb.tolist():
        mask_b |= 1 << e
    prod_exp = kernels.sumset_bits(la.tolist(), mask_b, m)
    card = prod_exp.bit_count()
    if card <= 64:
        idx = []
        bbits = prod_exp
        while bbits:
            low = bbits & -bbits
            idx.append(low.bit_length() - 1)
            bbits ^= low
        exps = np.asarray(idx, dtype=np.int64)
    else:
        raw = prod_exp.to_bytes((m + 7) >> 3, "little")
        flat = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        exps = np.nonzero(flat[:m])[0]
    out = field.pow_table[exps].tolist()
    if zero_out:
        out.append(0)
    return FpSet.from_elements(field, out)


@dataclass(frozen=True)
class SignedDilate:
    """One term sign*coeff*base of a signed dilate combination."""

    coeff: int
    sign: int
    base: FpSet

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.coeff % self.base.field.p == 0:
            raise ZeroDilate("signed dilate with zero coefficient")

    def as_set(self) -> FpSet:
        return dilate(self.sign * self.coeff, self.base)


def signed_combination(terms) -> FpSet:
    """Iterated sumset of the signed dilates, left to right."""
    terms = list(terms)
    if not terms:
        raise ValueError("signed_combination needs at least one term")
    _common_field(*[t.base for t in terms])
    acc = terms[0].as_set()
    for t in terms[1:]:
        acc = sumset(acc, t.as_set())
    return acc


def ratio_of_differences(a: FpSet) -> FpSet:
    """{(x - y) / (z - w) : all in a, z != w}; contains 0 and 1."""
    if a.card < 2:
        raise SetTooSmall("ratio set needs at least 2 elements")
    field = a.field
    diffs = difference_set(a, a)
    nz = [e for e in diffs.elements() if e]
    inv = FpSet.from_elements(field, [field.inv(e) for e in nz])
    return product_set(diffs, inv)


def dilate_intersection_size(a: int, b: int, s: FpSet) -> int:
    """|aS ∩ bS| computed exactly via the ratio a/b."""
    p = s.field.p
    a %= p
    b %= p
    if a == 0 or b == 0:
        raise ZeroDilate("dilate intersection with zero coefficient")
    r = a * s.field.inv(b) % p
    return kernels.membership_count_scaled(s.bits, s.elements(), r, p)


def _pairwise_bincount(left, right, combine, p: int) -> np.ndarray:
    """bincount over combine(left_i, right_j) mod p, chunked by rows."""
    counts = np.zeros(p, dtype=np.int64)
    rows = max(1, _CHUNK_CELLS // max(1, len(right)))
    for i in range(0, len(left), rows):
        block = combine(left[i : i + rows, None], right[None, :]) % p
        counts += np.bincount(block.ravel(), minlength=p)
    return counts


def ratio_counts(s: FpSet) -> np.ndarray:
    """counts[r] = #{(x, y) in s^2 : x = r*y} = |s ∩ r*s|; needs 0 not in s."""
    if 0 in s:
        raise ZeroInSet("ratio counts need 0 excluded")
    field = s.field
    p = field.p
    elems = np.asarray(s.elements(), dtype=np.int64)
    invs = np.asarray([field.inv(int(e)) for e in s.elements()], dtype=np.int64)
    return _pairwise_bincount(elems, invs, lambda x, y: x * y, p)


def multiplicative_energy(s: FpSet) -> int:
    """#{(a,b,c,d) in s^4 : a*c = b*d}; equals sum of |aS ∩ bS| over pairs."""
    if 0 in s:
        raise ZeroInSet("multiplicative energy needs 0 excluded")
    if s.card == 0:
        return 0
    c = ratio_counts(s)
    return int(np.dot(c, c))


def additive_energy_cross(s: FpSet, xi: int) -> int:
    """#{(a,b,a',b') in s^4 : a + xi*b = a' + xi*b'}."""
    p = s.field.p
    xi %= p
    if xi == 0:
        raise ZeroDilate("cross energy with xi = 0")
    if s.card == 0:
        return 0
    elems = np.asarray(s.elements(), dtype=np.int64)
    c = _pairwise_bincount(elems, elems, lambda x, y: x + xi * y, p)
    return int(np.dot(c, c))


def ratio_representation_count(s: FpSet, xi: int) -> int:
    """#{(a1,a2,b1,b2) in s^4 : a1 - a2 = xi*(b1 - b2), b1 != b2}."""
    if s.card < 2:
        raise SetTooSmall("representation count needs at least 2 elements")
    p = s.field.p
    xi %= p
    elems = np.asarray(s.elements(), dtype=np.int64)
    c = _pairwise_bincount(elems, elems, lambda x, y: x - y, p)
    scaled = (xi * np.arange(p, dtype=np.int64)) % p
    return int(np.dot(c[scaled[1:]], c[1:]))
