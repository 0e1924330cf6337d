"""Command-line front end.

Subcommands: verify (single certified run, JSON trace), sweep (CSV table
over families and sizes), oracle-suite (randomized exact batteries),
extremal (local search for small sum/product sets), bench (kernel
timings).

Exit codes for verify and oracle-suite: 0 all exact checks hold, 2 some
exact check failed (a bug or a falsified theorem), 1 usage or hypothesis
errors.  SUMPROD_THREADS sets the default worker count for sweep;
--threads overrides it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import bench, certify, extremal, oracle_suite
from .errors import SumProdError
from .families import AP, AP_UNION_GP, GP, KINDS, RANDOM, FamilySpec, generate
from .field import make_field, set_from_elements
from .naive import PAIRING_LIMIT
from .rng import derive_seed

CSV_HEADER = "p,family,n,seed,cardSumset,cardProductset,maxCard,exponent,caseTag"

_EPILOG = (
    "Benchmarks and oracle batteries skip the naive enumeration route "
    f"above {PAIRING_LIMIT} elementwise pairings."
)


def _family_spec(kind, n, p, args, seed=None):
    return FamilySpec(
        kind=kind,
        n=n,
        p=p,
        seed=seed,
        start=args.start if kind in (AP, AP_UNION_GP) else None,
        step=args.step if kind in (AP, AP_UNION_GP) else None,
        base=args.base if kind in (GP, AP_UNION_GP) else None,
    )


def cmd_verify(args) -> int:
    field = make_field(args.p)
    if args.elements is not None:
        elems = [int(tok) for tok in args.elements.split(",") if tok.strip() != ""]
        a = set_from_elements(field, elems)
    elif args.family is not None:
        spec = _family_spec(args.family, args.n, args.p, args, seed=args.seed)
        a = generate(spec, field)
    else:
        raise SumProdError("verify needs --elements or --family")
    trace = certify.run_theorem(a)
    doc = trace.to_json()
    print(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
    return 2 if certify.exact_failures(trace) else 0


def _sweep_row(p, kind, n, args, trial):
    seed_txt = ""
    if kind == RANDOM:
        trial_seed = derive_seed(args.seed, trial)
        seed_txt = str(trial_seed)
        spec = FamilySpec(kind=kind, n=n, p=p, seed=trial_seed)
    else:
        spec = _family_spec(kind, n, p, args)
    field = make_field(p)
    a = generate(spec, field)
    from .setops import product_set, sumset

    card_sum = sumset(a, a).card
    card_prod = product_set(a, a).card
    biggest = max(card_sum, card_prod)
    if n == 1:
        exponent = ""
        case_tag = certify.DEGENERATE
    else:
        exponent = f"{math.log(biggest) / math.log(n):.6f}"
        case_tag = certify.run_theorem(a).case_tag
    return f"{p},{kind},{n},{seed_txt},{card_sum},{card_prod},{biggest},{exponent},{case_tag}"


def cmd_sweep(args) -> int:
    families = [tok.strip() for tok in args.families.split(",") if tok.strip()]
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    if not families or not sizes:
        raise SumProdError("need at least one family and one size")
    for kind in families:
        if kind not in KINDS:
            raise SumProdError(f"unknown family {kind!r}")
    if args.trials < 1:
        raise SumProdError("trials must be at least 1")
    for n in sizes:
        if n < 1:
            raise SumProdError("sizes must be at least 1")
        if n > 1 and n * n >= args.p:
            raise SumProdError(f"n^2 = {n * n} >= p = {args.p}: no certified run possible")

    tasks = []
    for kind in families:
        for n in sizes:
            trials = args.trials if kind == RANDOM else 1
            for trial in range(trials):
                tasks.append((kind, n, trial))

    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("SUMPROD_THREADS", "1"))
    threads = max(1, threads)
    if threads == 1:
        rows = [_sweep_row(args.p, kind, n, args, trial) for kind, n, trial in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_sweep_row, args.p, kind, n, args, trial)
                for kind, n, trial in tasks
            ]
            rows = [f.result() for f in futures]  # emitted in task order
    print(CSV_HEADER)
    for row in rows:
        print(row)
    return 0


def cmd_oracle_suite(args) -> int:
    ok = oracle_suite.run_suite(args.instances, args.seed, args.max_p, args.max_card)
    return 0 if ok else 2


def cmd_extremal(args) -> int:
    report = extremal.run_extremal(args.p, args.n, args.iters, args.seed)
    print(json.dumps(report, indent=2))
    return 0


def cmd_bench(args) -> int:
    bench.run_bench(args.p, args.n, args.reps, seed=args.seed)
    return 0


def _add_family_flags(sub):
    sub.add_argument("--family", choices=KINDS, help="set family to generate")
    sub.add_argument("--n", type=int, default=None, help="family size")
    sub.add_argument("--start", type=int, default=1, help="AP start (default 1)")
    sub.add_argument("--step", type=int, default=1, help="AP step (default 1)")
    sub.add_argument("--base", type=int, default=2, help="GP base (default 2)")
    sub.add_argument("--seed", type=int, default=1, help="seed for RANDOM family")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumprod",
        description="Sumset/product-set laboratory over prime fields",
        epilog=_EPILOG,
    )
    subs = parser.add_subparsers(dest="command", required=True)

    v = subs.add_parser("verify", help="run the certified inequality chain on one set",
                        epilog=_EPILOG)
    v.add_argument("--p", type=int, required=True, help="prime modulus")
    v.add_argument("--elements", help="comma-separated explicit elements")
    _add_family_flags(v)
    v.add_argument("--out", help="also write the JSON trace to this path")
    v.set_defaults(fn=cmd_verify)

    s = subs.add_parser("sweep", help="CSV of sumset/product cardinalities and exponents",
                        epilog=_EPILOG)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--families", required=True, help="comma-separated family kinds")
    s.add_argument("--sizes", required=True, help="comma-separated sizes")
    s.add_argument("--trials", type=int, default=1, help="trials per size (random family)")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--start", type=int, default=1)
    s.add_argument("--step", type=int, default=1)
    s.add_argument("--base", type=int, default=2)
    s.add_argument("--threads", type=int, default=None,
                   help="worker threads (default SUMPROD_THREADS or 1)")
    s.set_defaults(fn=cmd_sweep)

    o = subs.add_parser("oracle-suite", help="randomized exact-verification batteries",
                        epilog=_EPILOG)
    o.add_argument("--instances", type=int, default=1000)
    o.add_argument("--seed", type=int, default=1)
    o.add_argument("--max-p", type=int, default=101)
    o.add_argument("--max-card", type=int, default=12)
    o.set_defaults(fn=cmd_oracle_suite)

    e = subs.add_parser("extremal", help="local search minimizing max(|A+A|, |AA|)",
                        epilog=_EPILOG)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--iters", type=int, default=1000)
    e.add_argument("--seed", type=int, default=1)
    e.set_defaults(fn=cmd_extremal)

    b = subs.add_parser("bench", help="kernel timing table", epilog=_EPILOG)
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=1)
    b.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SumProdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
