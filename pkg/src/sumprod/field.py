"""Prime fields, discrete-log tables, and the canonical set type.

A ``PrimeField`` is immutable in the semantic sense: the modulus and all
derived tables never change once observed.  The multiplicative tables
(least primitive root, power and dlog arrays) are built lazily on first
use and cached.  ``FpSet`` is a frozen subset of the field stored as a
membership bitmask plus a lazily cached sorted element view.
"""

from __future__ import annotations

import numpy as np

from .errors import CompositeModulus, ElementOutOfRange, FieldMismatch

# Bitmask length is p bits, so the modulus is capped to keep sets desk-scale.
MAX_MODULUS = 1 << 31

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all 64-bit inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_trial(n: int) -> list[int]:
    """Distinct prime factors by trial division (n < 2^31)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """Integers mod a prime p with optional multiplicative tables."""

    __slots__ = ("p", "_root", "_pow", "_dlog")

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise CompositeModulus(f"modulus must be an int, got {p!r}")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus {p} above the supported cap 2^31")
        if not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")
        self.p = p
        self._root = None
        self._pow = None
        self._dlog = None

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    @property
    def root(self):
        """Least primitive root, or None before the tables are built."""
        return self._root

    @property
    def dlog(self):
        """Array indexed by element: dlog[x] = exponent of x (dlog[0] = -1)."""
        return self._dlog

    @property
    def pow_table(self):
        """Array indexed by exponent k in [0, p-1): pow_table[k] = root^k."""
        return self._pow

    def primitive_root(self) -> int:
        """Least generator of the multiplicative group (cached)."""
        if self._root is None:
            p = self.p
            order = p - 1
            factors = _factor_trial(order) if order > 1 else []
            g = 1
            while True:
                if all(pow(g, order // q, p) != 1 for q in factors):
                    break
                g += 1
            self._root = g
        return self._root

    def ensure_dlog(self) -> None:
        """Build the power/dlog tables if absent.  Single-threaded."""
        if self._dlog is not None:
            return
        p = self.p
        g = self.primitive_root()
        powers = np.empty(p - 1, dtype=np.int64)
        x = 1
        for k in range(p - 1):
            powers[k] = x
            x = x * g % p
        dlog = np.full(p, -1, dtype=np.int64)
        dlog[powers] = np.arange(p - 1, dtype=np.int64)
        self._pow = powers
        self._dlog = dlog

    def dlog_of(self, x: int) -> int:
        self.ensure_dlog()
        if not 0 < x < self.p:
            raise ElementOutOfRange(f"dlog of {x} undefined mod {self.p}")
        return int(self._dlog[x])

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)


def make_field(p: int) -> PrimeField:
    """Validated prime field; raises CompositeModulus otherwise."""
    return PrimeField(p)


def build_dlog(field: PrimeField) -> PrimeField:
    """Populate the root/pow/dlog tables; idempotent, returns the field."""
    field.ensure_dlog()
    return field


def _bits_from_elements(elems, n: int) -> int:
    buf = bytearray((n + 7) >> 3)
    for e in elems:
        buf[e >> 3] |= 1 << (e & 7)
    return int.from_bytes(bytes(buf), "little")


def _elements_from_bits(bits: int, n: int, card: int) -> tuple[int, ...]:
    if card == 0:
        return ()
    if card <= 64:
        out = []
        b = bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)
    raw = bits.to_bytes((n + 7) >> 3, "little")
    flat = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return tuple(np.nonzero(flat[:n])[0].tolist())


class FpSet:
    """Immutable subset of a prime field."""

    __slots__ = ("field", "bits", "card", "_elems", "_view")

    def __init__(self, field: PrimeField, bits: int):
        self.field = field
        self.bits = bits
        self.card = bits.bit_count()
        self._elems = None
        self._view = None

    @classmethod
    def from_elements(cls, field: PrimeField, elems) -> FpSet:
        p = field.p
        checked = []
        for e in elems:
            e = int(e)
            if not 0 <= e < p:
                raise ElementOutOfRange(f"element {e} outside [0, {p})")
            checked.append(e)
        return cls(field, _bits_from_elements(checked, p))

    def elements(self) -> tuple[int, ...]:
        """Sorted distinct members (cached)."""
        if self._elems is None:
            self._elems = _elements_from_bits(self.bits, self.field.p, self.card)
        return self._elems

    def member_view(self) -> bytes:
        """Little-endian membership bytes for O(1) tests in hot loops."""
        if self._view is None:
            self._view = self.bits.to_bytes((self.field.p + 7) >> 3, "little")
        return self._view

    def __len__(self):
        return self.card

    def __iter__(self):
        return iter(self.elements())

    def __contains__(self, x):
        if not 0 <= x < self.field.p:
            return False
        view = self.member_view()
        return bool((view[x >> 3] >> (x & 7)) & 1)

    def __eq__(self, other):
        return (
            isinstance(other, FpSet)
            and other.field.p == self.field.p
            and other.bits == self.bits
        )

    def __hash__(self):
        return hash((self.field.p, self.bits))

    def __repr__(self):
        shown = ", ".join(str(e) for e in self.elements()[:12])
        tail = ", ..." if self.card > 12 else ""
        return f"FpSet(p={self.field.p}, {{{shown}{tail}}})"

    def is_subset_of(self, other: FpSet) -> bool:
        return self.bits & ~other.bits == 0

    def intersection(self, other: FpSet) -> FpSet:
        if other.field.p != self.field.p:
            raise FieldMismatch("intersection across different fields")
        return FpSet(self.field, self.bits & other.bits)

    def union(self, other: FpSet) -> FpSet:
        if other.field.p != self.field.p:
            raise FieldMismatch("union across different fields")
        return FpSet(self.field, self.bits | other.bits)

    def without(self, other: FpSet) -> FpSet:
        if other.field.p != self.field.p:
            raise FieldMismatch("difference across different fields")
        return FpSet(self.field, self.bits & ~other.bits)


def set_from_elements(field: PrimeField, elems) -> FpSet:
    """FpSet holding exactly the distinct elements (duplicates allowed)."""
    return FpSet.from_elements(field, elems)
