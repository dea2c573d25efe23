"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import density, etaq, hecke, partition_oracle, qseries

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _prime_powers(text: str) -> list[tuple[int, int]]:
    """'5:1,7:2' -> [(5, 1), (7, 2)]; a bare prime means exponent 1."""
    out = []
    try:
        for item in text.split(","):
            p, _, a = item.partition(":")
            out.append((int(p), int(a or 1)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p[:a],p[:a],..., got {text!r}") from None
    return out


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def workers() -> int:
    env = os.environ.get("THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


# --- expand ------------------------------------------------------------------


def cmd_expand(args) -> int:
    gen = qseries.GENERATORS[args.gen]
    series = gen(args.t, args.trunc, args.modulus)
    if args.json:
        _emit({
            "generator": args.gen,
            "t": args.t,
            "modulus": series.modulus,
            "trunc": series.trunc,
            "coefficients": [str(c) for c in series.tolist()],
        })
    else:
        sys.stdout.write(qseries.dump_csv(series, args.t))
    return EXIT_OK


# --- checkmf -----------------------------------------------------------------


def build_family(family: str, alpha=None, m=None, k=None, p=None, a=None, primes=None, index=1, level=None):
    def need(**kw):
        missing = [name for name, val in kw.items() if val is None]
        if missing:
            raise UsageError(f"family {family} needs --{', --'.join(missing)}")

    if family in ("E", "G"):
        need(alpha=alpha, m=m)
        eq = (etaq.family_E if family == "E" else etaq.family_G)(alpha, m)
    elif family in ("F", "H"):
        need(alpha=alpha, m=m, k=k)
        eq = (etaq.family_F if family == "F" else etaq.family_H)(alpha, m, k)
    elif family == "A":
        need(p=p, a=a)
        eq = etaq.family_A(p, a)
    elif family == "B":
        need(k=k)
        if primes is None:
            need(p=p, a=a)
            primes = [(p, a)]
        eq = etaq.family_B(primes, index, k)
    else:
        raise UsageError(f"unknown family {family}")
    if level is not None:
        if level % eq.level:
            raise UsageError(f"level {level} is not a multiple of the minimal level {eq.level}")
        eq = eq.with_level(level)
    return eq


def _report_payload(eq) -> dict:
    report = etaq.modularity_report(eq)
    payload = {"family": eq.name, "terms": {str(d): r for d, r in eq.terms}}
    payload.update(report.to_dict())
    payload["modularForm"] = report.is_modular_form
    return payload


def grid_cases() -> list[dict]:
    cases = []
    for fam in ("F", "H"):
        for alpha in (0, 1, 2):
            for m in (1, 5, 7, 11):
                for k in (1, 2, 3):
                    cases.append({"family": fam, "alpha": alpha, "m": m, "k": k})
    for primes, k in (([(5, 1)], 1), ([(5, 1)], 2), ([(5, 2)], 1), ([(7, 1)], 1)):
        cases.append({"family": "B", "primes": primes, "k": k, "index": 1})
    for i in (1, 2):
        for k in (1, 2):
            cases.append({"family": "B", "primes": [(5, 1), (7, 1)], "k": k, "index": i})
    return cases


def _grid_job(case: dict) -> dict:
    return _report_payload(build_family(**case))


def cmd_checkmf(args) -> int:
    if args.grid:
        with ProcessPoolExecutor(max_workers=workers()) as pool:
            payloads = list(pool.map(_grid_job, grid_cases()))
        ok = all(p["modularForm"] for p in payloads)
        if args.json:
            _emit({"cases": payloads, "allModular": ok})
        else:
            for p in payloads:
                print(f"{p['family']}: weight={p['weight']} level={p['level']} modular={str(p['modularForm']).lower()}")
        return EXIT_OK if ok else EXIT_FAIL
    if args.family is None:
        raise UsageError("checkmf needs --family or --grid")
    eq = build_family(args.family, args.alpha, args.m, args.k, args.p, args.a,
                      args.primes, args.index, args.level)
    payload = _report_payload(eq)
    if args.json:
        _emit(payload)
    else:
        print(f"family: {payload['family']}")
        for key in ("weight", "level", "conditionA", "conditionB", "characterKernel", "holomorphic"):
            val = payload[key]
            print(f"{key}: {str(val).lower() if isinstance(val, bool) else val}")
        for cusp in payload["cusps"]:
            print(f"  d={cusp['d']}: {cusp['orderNum']}/{cusp['orderDen']}")
    return EXIT_OK if payload["modularForm"] else EXIT_FAIL


# --- density / scan ------------------------------------------------------------


def cmd_density(args) -> int:
    report = density.bbar_density(args.t, args.modulus, args.residue, args.checkpoints)
    if args.save_golden:
        density.save_golden(report, args.save_golden)
    sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n" if args.json else report.to_csv())
    if args.golden:
        golden = density.load_golden(args.golden)
        if golden != report:
            print(f"golden mismatch against {args.golden}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def cmd_scan(args) -> int:
    result = density.congruence_scan(args.t, args.modulus, args.amax, args.nmax)
    if args.json:
        _emit(result.to_dict())
    else:
        print(f"# {result.label}")
        print("A,B")
        for a, b in result.progressions:
            print(f"{a},{b}")
    return EXIT_OK


# --- hecke ---------------------------------------------------------------------


def cmd_hecke(args) -> int:
    result = hecke.nilpotency_search(args.k, args.v, args.primes, args.trunc, args.min_terms)
    payload = result.to_dict()
    status = EXIT_OK
    if args.verify_nmax and result.depth:
        check = hecke.verify_theorem7_instance(args.primes[: result.depth], args.v, args.verify_nmax)
        payload["verification"] = check.to_dict()
        if not check.passed:
            status = EXIT_FAIL
    if args.json:
        _emit(payload)
    else:
        for s in result.steps:
            print(f"T_{s.prime}: trunc={s.trunc} nonzero={s.nonzero_count} first={s.first_nonzero_exponent}")
        print(result.verdict)
        if "verification" in payload:
            v = payload["verification"]
            print(f"verification: tested={v['tested']} passed={str(v['passed']).lower()}")
    return status


# --- oracle --------------------------------------------------------------------


def cmd_oracle(args) -> int:
    if args.what == "tcore":
        print(partition_oracle.count_t_cores(args.n, args.t))
    else:
        d = partition_oracle.PartitionDiagram(tuple(args.parts))
        for row in partition_oracle.hook_numbers(d):
            print(" ".join(str(h) for h in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcorelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="coefficients of c_t, abar_t or bbar_t")
    p.add_argument("--gen", choices=sorted(qseries.GENERATORS), required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--modulus", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("checkmf", help="weight, level, character and cusp orders of an eta-quotient family")
    p.add_argument("--family", choices=sorted(etaq.FAMILIES))
    p.add_argument("--alpha", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--primes", type=_prime_powers, help="B family: p:a,p:a,...")
    p.add_argument("--index", type=int, default=1, help="B family: which prime drives A_i")
    p.add_argument("--level", type=int, help="check at this multiple of the minimal level")
    p.add_argument("--grid", action="store_true", help="run the full F/H/B parameter grid")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_checkmf)

    p = sub.add_parser("density", help="residue-class density of bbar_t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--residue", type=int, default=0)
    p.add_argument("--checkpoints", type=_ints, default=list(density.DEFAULT_CHECKPOINTS))
    p.add_argument("--golden", help="compare against a pinned JSON report")
    p.add_argument("--save-golden", help="write the report as a golden file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("hecke", help="Hecke nilpotency search on F(1,1,k) mod 2^v")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--primes", type=_ints, required=True)
    p.add_argument("--trunc", type=int, default=100_000)
    p.add_argument("--min-terms", type=int, default=50)
    p.add_argument("--verify-nmax", type=int, default=0,
                   help="also check the bbar_3 congruence for n up to this bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("oracle", help="brute-force partition oracle")
    osub = p.add_subparsers(dest="what", required=True)
    q = osub.add_parser("tcore")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q = osub.add_parser("hooks")
    q.add_argument("--parts", type=_ints, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("scan", help="search progressions A n + B where bbar_t vanishes mod M")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except qseries.ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        # every domain error in the package derives from ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
