"""Field substrate: primality validation, dlog tables, set round trips."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumprod.errors import CompositeModulus, ElementOutOfRange
from sumprod.field import FpSet, build_dlog, is_prime, make_field, set_from_elements
from sumprod.rng import SplitMix64


def sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = b"\x00" * len(flags[i * i :: i])
    return [i for i in range(limit + 1) if flags[i]]


def test_make_field_small_prime():
    assert make_field(7).p == 7


def test_make_field_trial_division_prime():
    # independent oracle: trial division
    n = 4099
    assert all(n % d for d in range(2, int(n**0.5) + 1))
    assert make_field(n).p == 4099


def test_make_field_rejects_composite():
    with pytest.raises(CompositeModulus):
        make_field(9)
    with pytest.raises(CompositeModulus):
        make_field(1)
    with pytest.raises(CompositeModulus):
        make_field(0)


def test_make_field_rejects_above_cap():
    with pytest.raises(ValueError):
        make_field((1 << 31) + 11)


def test_primality_matches_sieve_below_10k():
    primes = set(sieve(10_000))
    for n in range(2, 10_000):
        assert is_prime(n) == (n in primes), n


def test_build_dlog_p7():
    f = build_dlog(make_field(7))
    assert f.root == 3
    assert f.dlog_of(3) == 1
    assert f.dlog_of(2) == 2  # 3^2 = 9 = 2 mod 7


def test_build_dlog_p5_identity():
    f = build_dlog(make_field(5))
    assert f.root == 2
    assert f.dlog_of(1) == 0


def test_build_dlog_p11_bijection():
    f = build_dlog(make_field(11))
    # oracle: enumerate powers of the least root directly
    assert f.root == 2
    powers = {}
    x = 1
    for k in range(10):
        powers[x] = k
        x = x * 2 % 11
    assert {e: f.dlog_of(e) for e in range(1, 11)} == powers
    assert sorted(f.dlog_of(e) for e in range(1, 11)) == list(range(10))


@pytest.mark.parametrize("p", [7, 11, 101, 257, 4099])
def test_dlog_homomorphism_random_pairs(p):
    f = build_dlog(make_field(p))
    rng = SplitMix64(p)
    for _ in range(10_000):
        x = 1 + rng.below(p - 1)
        y = 1 + rng.below(p - 1)
        assert f.dlog_of(x * y % p) == (f.dlog_of(x) + f.dlog_of(y)) % (p - 1)


def test_set_from_elements_dedup():
    f = make_field(7)
    s = set_from_elements(f, [1, 2, 2, 4])
    assert s.elements() == (1, 2, 4)
    assert s.card == 3


def test_set_from_elements_empty():
    f = make_field(7)
    s = set_from_elements(f, [])
    assert s.card == 0
    assert s.elements() == ()


def test_set_from_elements_out_of_range():
    f = make_field(7)
    with pytest.raises(ElementOutOfRange):
        set_from_elements(f, [9])
    with pytest.raises(ElementOutOfRange):
        set_from_elements(f, [-1])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=100), max_size=40))
def test_round_trip_sorted_dedup(elems):
    f = make_field(101)
    s = set_from_elements(f, elems)
    assert s.elements() == tuple(sorted(set(elems)))
    assert s.card == len(set(elems))
    assert s.bits.bit_count() == s.card


def test_membership_and_views_agree():
    f = make_field(257)
    rng = SplitMix64(3)
    elems = sorted({1 + rng.below(256) for _ in range(40)})
    s = set_from_elements(f, elems)
    for x in range(257):
        assert (x in s) == (x in set(elems))
    # bit-vector view and sorted view describe the same set
    assert [i for i in range(257) if (s.bits >> i) & 1] == list(s.elements())


def test_fpset_large_elements_path():
    # exercises the numpy extraction path (card > 64)
    f = make_field(257)
    elems = list(range(1, 120))
    s = set_from_elements(f, elems)
    assert s.elements() == tuple(elems)
