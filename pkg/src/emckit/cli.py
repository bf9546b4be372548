"""Command-line front door: parameter parsing, grid orchestration, report
serialization.

Exit codes: 0 all requested checks pass, 1 any check failed (reports still
written), 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import audit as audit_mod
from . import search as search_mod
from .audit import AuditReport, ParameterWindowError, make_report
from .constructions import build_A, build_B, crossover_n
from .core import Family, KSet
from .matching import BudgetExceeded
from .shifting import shift_to_fixpoint
from .transversals import (
    all_cyclic_collections,
    all_shift_collections,
    bad_pair_stats,
    full_transversals,
    product_inequality_check,
    q_family,
)
from .weights import WeightFrame, family_weight_identity, wA_of_M


def fmt_exact(v) -> str:
    """Exact rendering: integers bare, non-integers as p/q (never decimals)."""
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def report_to_dict(r: AuditReport) -> dict:
    d = {
        "claim_id": r.claim_id,
        "params": {key: r.params[key] for key in sorted(r.params)},
        "lhs": fmt_exact(r.lhs),
        "rhs": fmt_exact(r.rhs),
        "cmp": r.cmp,
        "pass": r.passed,
    }
    if r.witness is not None:
        d["witness"] = list(r.witness)
    if r.note:
        d["note"] = r.note
    return d


def render_reports(reports: list[AuditReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["claim_id", "params", "lhs", "rhs", "cmp", "pass", "witness", "note"])
        for r in reports:
            params = ";".join(f"{key}={r.params[key]}" for key in sorted(r.params))
            writer.writerow(
                [
                    r.claim_id,
                    params,
                    fmt_exact(r.lhs),
                    fmt_exact(r.rhs),
                    r.cmp,
                    str(r.passed).lower(),
                    "" if r.witness is None else json.dumps(list(r.witness)),
                    r.note,
                ]
            )
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def write_reports(reports: list[AuditReport], out: Optional[str], fmt: str) -> None:
    text = render_reports(reports, fmt)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _pmap(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    try:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    except (OSError, PermissionError):
        return [fn(x) for x in items]


def _audit_point(point) -> list[AuditReport]:
    k, s, n = point
    return audit_mod.audit_all(k, s, n)


def _parse_n_values(spec: str, k: int, s: int) -> list[int]:
    if spec == "auto":
        return [audit_mod.min_window_n(k, s), audit_mod.max_window_n(k, s)]
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError("empty n range")
        return list(range(lo_i, hi_i + 1))
    return [int(spec)]


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError("empty range")
        return list(range(lo_i, hi_i + 1))
    return [int(spec)]


def _cmd_audit(args) -> int:
    n_values = _parse_n_values(args.n, args.k, args.s)
    points = [(args.k, args.s, n) for n in n_values]
    chunks = _pmap(_audit_point, points, args.jobs)
    reports = [r for chunk in chunks for r in chunk]
    write_reports(reports, args.out, args.format)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_verify(args) -> int:
    report = search_mod.verify_conjecture(
        args.n, args.k, args.s, method=args.method, node_budget=args.node_budget
    )
    write_reports([report], args.out, args.format)
    return 0 if report.passed else 1


def _cmd_crossover(args) -> int:
    rows = ["k,s,crossover_n,bound,ok"]
    for k in _parse_range(args.k):
        for s in range(k + 1, args.s_max + 1):
            cx = crossover_n(k, s)
            bound_frac = Fraction(s + 1) * (Fraction(2 * k + 1, 2))
            bound = -(-bound_frac.numerator // bound_frac.denominator)  # ceil
            rows.append(f"{k},{s},{cx},{bound},{str(cx <= bound).lower()}")
    text = "\n".join(rows) + "\n"
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    ok = all(row.endswith("true") for row in rows[1:])
    return 0 if ok else 1


def _small_frame(k: int) -> WeightFrame:
    return WeightFrame((k + 1) * k, k, k)


def _transversal_reports(k: int, checks: list[str], seed: int) -> list[AuditReport]:
    frame = _small_frame(k)
    reports = []
    if "counts" in checks:
        fulls = list(full_transversals(frame))
        reports.append(
            make_report("transversal:full_count", {"k": k}, len(fulls), k**k, "==")
        )
        all_weight_one = all(t.weight == 1 for t in fulls)
        reports.append(
            make_report(
                "transversal:full_weight",
                {"k": k},
                0 if all_weight_one else 1,
                0,
                "==",
            )
        )
    if "cyclic" in checks and k >= 2:
        # defect set touching blocks 1..k-1 once, canonical choice
        blocks = frame.b_blocks()
        t = KSet.from_elements(frame.prefix, [b[0] for b in blocks[:-1]])
        seen = {}
        ok = True
        count = 0
        for coll in all_cyclic_collections(t, frame):
            count += 1
            for q in coll:
                if q.mask in seen and seen[q.mask] != count:
                    ok = False
                seen[q.mask] = count
        reports.append(
            make_report(
                "transversal:cyclic_collections",
                {"k": k},
                count,
                (k - 1) ** (k - 1),
                "==",
            )
        )
        reports.append(
            make_report(
                "transversal:cyclic_no_shared",
                {"k": k},
                0 if ok else 1,
                0,
                "==",
            )
        )
    if "badpairs" in checks:
        stats = bad_pair_stats(frame, k)
        reports.append(
            make_report(
                "transversal:bad_pair_per_set",
                {"k": k},
                stats.per_t,
                k * (k - 1) ** (k - 1),
                "==",
            )
        )
        reports.append(
            make_report(
                "transversal:bad_pair_per_mask",
                {"k": k},
                stats.per_mask_max,
                stats.per_mask_bound,
                "<=",
            )
        )
        reports.append(
            make_report(
                "transversal:bad_pair_doubling",
                {"k": k},
                2 * stats.num_t,
                stats.num_bad_masks,
                "<=",
            )
        )
    if "q" in checks:
        rng = random.Random(seed)
        blocks = frame.b_blocks()
        g0 = frame.g0_elements()
        failures = 0
        trials = 50
        for _ in range(trials):
            # random size-(k-1) subset of the local universe with a0 >= 1
            c = rng.randrange(0, k)  # touched blocks
            sizes = _random_composition(rng, k - 1, c)
            elems = []
            chosen_blocks = rng.sample(range(k), c)
            for bi, cnt in zip(chosen_blocks, sizes):
                elems.extend(rng.sample(blocks[bi], cnt))
            need_g0 = (k - 1) - sum(sizes)
            elems.extend(rng.sample(g0, need_g0))
            t = KSet.from_elements(frame.prefix, elems)
            collections = list(all_shift_collections(t, frame))
            pis = collections[rng.randrange(len(collections))]
            try:
                q_family(t, pis, frame)
            except AssertionError:
                failures += 1
        reports.append(
            make_report(
                "transversal:q_family_disjoint",
                {"k": k, "trials": trials, "seed": seed},
                failures,
                0,
                "==",
            )
        )
    if "product" in checks:
        ok = product_inequality_check(k)
        reports.append(
            make_report(
                "claim8:product_inequality", {"k": k}, 0 if ok else 1, 0, "=="
            )
        )
    return reports


def _random_composition(rng: random.Random, total_max: int, parts: int) -> list[int]:
    """Random positive part sizes, at most total_max in total (possibly fewer)."""
    if parts == 0:
        return []
    sizes = [1] * parts
    budget = total_max - parts
    for _ in range(budget):
        if rng.random() < 0.5:
            sizes[rng.randrange(parts)] += 1
    # trim if we overshot block capacity later; keep simple: cap at total_max
    while sum(sizes) > total_max:
        i = max(range(parts), key=lambda j: sizes[j])
        sizes[i] -= 1
    return sizes


def _cmd_transversal(args) -> int:
    checks = (
        ["counts", "cyclic", "badpairs", "q", "product"]
        if args.check == "all"
        else [args.check]
    )
    reports = _transversal_reports(args.k, checks, args.seed)
    write_reports(reports, args.out, args.format)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_identities(args) -> int:
    if args.family == "A":
        fam = build_A(args.n, args.k, args.s)
    elif args.family == "B":
        fam = build_B(args.n, args.k, args.s)
    else:
        with open(args.family, encoding="utf-8") as fh:
            fam = Family.from_text(fh.read())
    frame = WeightFrame(args.n, args.k, args.s)
    lhs, rhs, ok = family_weight_identity(fam, frame)
    wa = wA_of_M(frame)
    from .core import binom
    from .constructions import prefix_size

    size_a = binom(prefix_size(args.k, args.s), args.k)
    reports = [
        make_report(
            "identity:family_weight",
            {"n": args.n, "k": args.k, "s": args.s, "family": args.family},
            lhs,
            rhs,
            "==",
        ),
        make_report(
            "identity:prefix_weight",
            {"n": args.n, "k": args.k, "s": args.s},
            binom(args.s, args.k) * wa,
            size_a,
            "==",
        ),
    ]
    for r in reports:
        print(f"{r.claim_id}: {fmt_exact(r.lhs)} {r.cmp} {fmt_exact(r.rhs)} -> {r.passed}")
    if args.out:
        write_reports(reports, args.out, args.format)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_shift(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        fam = Family.from_text(fh.read())
    shifted = shift_to_fixpoint(fam)
    text = shifted.to_text()
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_find_g0(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        fam = Family.from_text(fh.read())
    g0 = search_mod.find_G0(fam, args.k, args.s)
    if g0 is None:
        print("none")
        return 1
    print(",".join(map(str, g0.elements)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emckit",
        description="Exact verification workbench for almost-perfect-matching bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("audit", help="run the exact-rational claim audits")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--n", default="auto", help="int, range a..b, or 'auto' (both window endpoints)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("verify", help="desk-scale extremal verification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--method", choices=["exhaustive", "bnb", "shifted_only"], default="bnb")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("crossover", help="crossover points as CSV")
    p.add_argument("--k", required=True, help="int or range a..b")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_crossover)

    p = sub.add_parser("transversal", help="transversal counting checks")
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--check",
        choices=["counts", "cyclic", "badpairs", "q", "product", "all"],
        default="all",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_transversal)

    p = sub.add_parser("identities", help="weight identity checks")
    p.add_argument("--family", required=True, help="A, B, or a family file path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("shift", help="compress a family to its shifted fixpoint")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("find-g0", help="search for the distinguished pivot set")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=_cmd_find_g0)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParameterWindowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
