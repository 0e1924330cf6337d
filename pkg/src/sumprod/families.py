"""Deterministic set-family generators for experiments.

Every family produces exactly n distinct nonzero elements or raises
InvalidSpec; generation never emits 0.  RANDOM draws from the package's
splitmix64 generator, so a (seed, spec) pair reproduces the same set on
any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidSpec
from .field import FpSet, PrimeField, make_field
from .rng import SplitMix64

AP = "ap"
GP = "gp"
RANDOM = "random"
SUBGROUP = "subgroup"
AP_UNION_GP = "ap_union_gp"

KINDS = (AP, GP, RANDOM, SUBGROUP, AP_UNION_GP)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    p: int
    seed: int | None = None
    start: int | None = None
    step: int | None = None
    base: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown family kind {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec("family size must be at least 1")
        if self.n >= self.p:
            raise InvalidSpec(f"size {self.n} does not fit in F_{self.p}*")
        if self.kind in (AP, AP_UNION_GP) and (self.start is None or self.step is None):
            raise InvalidSpec("AP family needs start and step")
        if self.kind in (GP, AP_UNION_GP) and self.base is None:
            raise InvalidSpec("GP family needs base")
        if self.kind == RANDOM and self.seed is None:
            raise InvalidSpec("RANDOM family needs a seed")


def _ap_stream(spec: FamilySpec, p: int):
    for i in range(p):
        yield (spec.start + i * spec.step) % p


def _gp_stream(spec: FamilySpec, p: int):
    base = spec.base % p
    if base == 0:
        raise InvalidSpec("GP base is 0 mod p")
    x = 1
    for _ in range(p):
        yield x
        x = x * base % p


def _collect(stream, n: int) -> list[int] | None:
    out: list[int] = []
    seen = set()
    for v in stream:
        if v and v not in seen:
            seen.add(v)
            out.append(v)
            if len(out) == n:
                return out
    return None


def generate(spec: FamilySpec, field: PrimeField | None = None) -> FpSet:
    """Materialize the family; deterministic for a fixed spec."""
    field = field if field is not None else make_field(spec.p)
    if field.p != spec.p:
        raise InvalidSpec(f"field modulus {field.p} != spec modulus {spec.p}")
    p = spec.p
    n = spec.n

    if spec.kind == AP:
        elems = _collect(_ap_stream(spec, p), n)
    elif spec.kind == GP:
        elems = _collect(_gp_stream(spec, p), n)
    elif spec.kind == SUBGROUP:
        if (p - 1) % n != 0:
            raise InvalidSpec(f"subgroup size {n} does not divide {p - 1}")
        g = field.primitive_root()
        h = pow(g, (p - 1) // n, p)
        elems = []
        x = 1
        for _ in range(n):
            elems.append(x)
            x = x * h % p
    elif spec.kind == RANDOM:
        rng = SplitMix64(spec.seed)
        seen: set[int] = set()
        elems = []
        budget = 1000 * n + 10 * p
        while len(elems) < n and budget:
            budget -= 1
            v = 1 + rng.below(p - 1)
            if v not in seen:
                seen.add(v)
                elems.append(v)
        if len(elems) < n:
            raise InvalidSpec("random draw budget exhausted")
    else:  # AP_UNION_GP: interleave the two streams, AP first
        ap = _ap_stream(spec, p)
        gp = _gp_stream(spec, p)
        seen = set()
        elems = []
        ap_done = gp_done = False
        while len(elems) < n and not (ap_done and gp_done):
            for stream, done_flag in ((ap, "ap"), (gp, "gp")):
                if len(elems) == n:
                    break
                try:
                    v = next(stream)
                except StopIteration:
                    if done_flag == "ap":
                        ap_done = True
                    else:
                        gp_done = True
                    continue
                if v and v not in seen:
                    seen.add(v)
                    elems.append(v)
        if len(elems) < n:
            elems = None

    if elems is None:
        raise InvalidSpec(f"{spec.kind} family cannot reach {n} distinct nonzero elements mod {p}")
    return FpSet.from_elements(field, elems)
