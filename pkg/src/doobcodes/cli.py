"""Command-line front end: generate, verify, decode, census, demo.

Exit codes: 0 on success, 1 when a verification or assertion fails, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import doob
from .cyclotomic import check_prop1
from .galois_ring import DEFAULT_DELTA_CAP, build_context
from .partition import assemble_partition, load_partition, save_partition
from .verifier import verify_all, weight3_census


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--delta", type=int, required=True, help="odd degree >= 3")
    p.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_DELTA_CAP,
        help="largest delta to allow (tables grow as 4^delta)",
    )


def _checked_delta(parser: argparse.ArgumentParser, args) -> int:
    if args.delta % 2 == 0:
        parser.error("delta must be odd")
    if args.delta < 3:
        parser.error("delta must be at least 3")
    if args.delta > args.cap:
        parser.error(
            f"delta {args.delta} above cap {args.cap} "
            f"(raise --cap explicitly to proceed)"
        )
    if args.cap > DEFAULT_DELTA_CAP and args.delta > DEFAULT_DELTA_CAP:
        est = 5 * 4**args.delta / 2**20
        print(f"note: delta={args.delta} partition tables need about {est:.0f} MiB")
    return args.delta


def _cmd_generate(parser, args) -> int:
    delta = _checked_delta(parser, args)
    ctx = build_context(delta, cap=args.cap)
    partition = assemble_partition(ctx, with_locator=False)
    params = doob.params_for_delta(delta)
    if args.partition:
        try:
            save_partition(partition, args.partition)
        except OSError as e:
            print(f"error: cannot write partition file: {e}", file=sys.stderr)
            return 1
    if args.matrix:
        code = doob.build_check_matrix(partition)
        try:
            doob.save_matrix(code, args.matrix)
        except OSError as e:
            print(f"error: cannot write matrix file: {e}", file=sys.stderr)
            return 1
    print(f"D({params.m},{params.n}), matrix {delta}x{params.length}")
    return 0


def _cmd_verify(parser, args) -> int:
    delta = _checked_delta(parser, args)
    partition = None
    if args.partition_in:
        try:
            partition = load_partition(args.partition_in)
        except (OSError, ValueError, KeyError) as e:
            print(f"error: cannot load partition: {e}", file=sys.stderr)
            return 1
        if partition.delta != delta:
            print(
                f"error: partition file is for delta={partition.delta}",
                file=sys.stderr,
            )
            return 1
    report = verify_all(
        delta, level=args.level, seed=args.seed, partition=partition, cap=args.cap
    )
    print(report.format_table())
    if args.report:
        Path(args.report).write_text(
            json.dumps(report.as_dict(), indent=2) + "\n", encoding="utf-8"
        )
    print("all checks passed" if report.ok else "VERIFICATION FAILED")
    return 0 if report.ok else 1


def _cmd_decode(parser, args) -> int:
    delta = _checked_delta(parser, args)
    ctx = build_context(delta, cap=args.cap)
    params = doob.params_for_delta(delta)
    try:
        v = doob.vertex_from_string(args.vector, params)
    except ValueError as e:
        parser.error(str(e))
    code = doob.build_check_matrix(assemble_partition(ctx))
    cw = doob.decode(code, v)
    dist = doob.doob_distance(params, v, cw)
    print(f"codeword: {doob.vertex_to_string(cw)}")
    changed = np.flatnonzero((v - cw) % 4)
    if len(changed) == 0:
        print("corrected: none")
    elif changed[0] >= 2 * params.m:
        k = int(changed[0]) - 2 * params.m
        print(f"corrected: K4 coordinate {k} (column exponent {k})")
    else:
        pair = int(changed[0]) // 2
        print(f"corrected: Shrikhande pair {pair} (columns {2 * pair},{2 * pair + 1})")
    print(f"distance: {dist}")
    return 0


def _cmd_census(parser, args) -> int:
    delta = _checked_delta(parser, args)
    ctx = build_context(delta, cap=args.cap)
    prop = check_prop1(delta)
    print(f"2-cyclotomic cosets modulo {ctx.n}:")
    print("  size  count")
    for s, ns in prop["rows"]:
        print(f"  {s:>4}  {ns}")
    print(f"divisibility of N_s*s by 3 (s > 2): {'ok' if prop['ok'] else 'VIOLATED'}")
    o2, o4 = weight3_census(ctx)
    print(f"weight-3 census (order 2, order 4): ({o2}, {o4})")
    if args.report:
        doc = {
            "delta": delta,
            "sizes": [[s, ns] for s, ns in prop["rows"]],
            "divisibility_ok": prop["ok"],
            "weight3_census": [o2, o4],
        }
        Path(args.report).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return 0 if prop["ok"] else 1


def _cmd_demo(parser, args) -> int:
    delta = _checked_delta(parser, args)
    if args.errors < 0:
        parser.error("--errors must be >= 0")
    ctx = build_context(delta, cap=args.cap)
    code = doob.build_check_matrix(assemble_partition(ctx))
    rng = np.random.default_rng(args.seed)
    pats = doob.weight1_pattern_matrix(code.params)
    recovered = 0
    for _ in range(args.trials):
        cw = doob.random_codeword(code, rng)
        v = cw.copy()
        for _ in range(args.errors):
            v = (v + pats[rng.integers(0, len(pats))]) % 4
        if (doob.decode(code, v) == cw).all():
            recovered += 1
    rate = recovered / args.trials if args.trials else 1.0
    print(
        f"delta={delta} errors={args.errors} trials={args.trials}: "
        f"recovered {recovered}/{args.trials} (rate {rate:.4f})"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doobcodes",
        description=(
            "Construct and verify quasi-cyclic additive 1-perfect codes in "
            "Doob graphs from partitions of the Galois ring GR(4^delta)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write partition and check-matrix files")
    _add_common(p)
    p.add_argument("--partition", help="output path for the partition file")
    p.add_argument("--matrix", help="output path for the check-matrix file")

    p = sub.add_parser("verify", help="run the verification suite")
    _add_common(p)
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--report", help="write the structured report here")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--partition-in", help="verify this partition file instead")

    p = sub.add_parser("decode", help="decode a vertex to the nearest codeword")
    _add_common(p)
    p.add_argument("--vector", required=True, help="vertex as L digits 0-3")

    p = sub.add_parser("census", help="coset sizes and the weight-3 census")
    _add_common(p)
    p.add_argument("--report", help="write the census as a structured file")

    p = sub.add_parser("demo", help="decode random codewords under injected errors")
    _add_common(p)
    p.add_argument("--errors", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    return parser


_COMMANDS = {
    "generate": _cmd_generate,
    "verify": _cmd_verify,
    "decode": _cmd_decode,
    "census": _cmd_census,
    "demo": _cmd_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _COMMANDS[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
