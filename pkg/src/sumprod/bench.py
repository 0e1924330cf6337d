"""Kernel benchmarks: bit-vector vs naive routes, and compiled vs pure
backends when both are importable.

Output agreement is asserted before any timing.  The naive route is
skipped above PAIRING_LIMIT pairings so runs stay bounded.
"""

from __future__ import annotations

import time

from . import _kernels as kernels
from . import naive, setops
from ._kernels import pure as pure_backend
from .errors import InvalidSpec
from .families import RANDOM, FamilySpec, generate
from .field import make_field

try:
    from ._kernels import _fastbits as compiled_backend
except ImportError:
    compiled_backend = None


def _median_time(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    times.sort()
    return times[len(times) // 2]


def run_bench(p, n, reps, seed=1, emit=print):
    """Time the kernel routes on one random n-element set mod p."""
    if reps < 1:
        raise InvalidSpec("reps must be at least 1")
    if n < 1:
        raise InvalidSpec("n must be at least 1")
    field = make_field(p)
    if n >= p:
        raise InvalidSpec(f"n = {n} does not fit in F_{p}*")
    a = generate(FamilySpec(kind=RANDOM, n=n, p=p, seed=seed), field)
    pairings = n * n
    rows = []

    def add(op, route, result, fn):
        rows.append((op, route, result, _median_time(fn, reps)))

    # sumset: bit-vector vs naive
    fast_sum = setops.sumset(a, a)
    add("sumset", f"bitvector[{kernels.BACKEND}]", fast_sum.card, lambda: setops.sumset(a, a))
    if pairings <= naive.PAIRING_LIMIT:
        assert set(fast_sum.elements()) == naive.sumset(a, a)
        add("sumset", "naive", fast_sum.card, lambda: naive.sumset(a, a))
    else:
        rows.append(("sumset", "naive", "skipped", None))

    # backend comparison on the raw kernel
    if compiled_backend is not None:
        elems = a.elements()
        assert compiled_backend.sumset_bits(elems, a.bits, p) == pure_backend.sumset_bits(
            elems, a.bits, p
        )
        add("sumset", "kernel[cython]", fast_sum.card,
            lambda: compiled_backend.sumset_bits(elems, a.bits, p))
        add("sumset", "kernel[pure]", fast_sum.card,
            lambda: pure_backend.sumset_bits(elems, a.bits, p))
    else:
        rows.append(("sumset", "kernel[cython]", "unavailable", None))

    # product set: dlog vs naive
    field.ensure_dlog()
    fast_prod = setops.product_set(a, a)
    add("product", "dlog", fast_prod.card, lambda: setops.product_set(a, a))
    if pairings <= naive.PAIRING_LIMIT:
        assert set(fast_prod.elements()) == naive.product_set(a, a)
        add("product", "naive", fast_prod.card, lambda: naive.product_set(a, a))
    else:
        rows.append(("product", "naive", "skipped", None))

    # multiplicative energy: ratio-count route vs naive pair counting
    energy = setops.multiplicative_energy(a)
    add("energy", "ratio-count", energy, lambda: setops.multiplicative_energy(a))
    if pairings <= naive.PAIRING_LIMIT:
        assert energy == naive.multiplicative_energy(a)
        add("energy", "naive", energy, lambda: naive.multiplicative_energy(a))
    else:
        rows.append(("energy", "naive", "skipped", None))

    emit(f"p={p} n={n} reps={reps} seed={seed} backend={kernels.BACKEND}")
    emit(f"{'op':<10}{'route':<22}{'result':>14}{'median':>14}")
    for op, route, result, med in rows:
        stamp = "-" if med is None else f"{med * 1e3:.3f} ms"
        emit(f"{op:<10}{route:<22}{result!s:>14}{stamp:>14}")
    return rows
