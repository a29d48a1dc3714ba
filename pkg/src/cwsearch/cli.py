"""Command-line surface: one subcommand per pipeline stage plus full runs.

All stdout output is JSONL records (stable across identical invocations;
timing lives only in ledger files).  Diagnostics are single JSON lines on
stderr.  Exit codes: 0 completed, 1 witness found where nonexistence was
being tested (or a golden/verification mismatch), 2 usage error, 3 budget
ran out (inconclusive).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import canon, liftsearch, pipeline
from .contents import load_reference_contents, solve_content_system
from .seqcore import NonSquareWeightError, is_paf_zero, verify_cw, verify_cw_matrix

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

CHECKPOINT_ENV = "CWSEARCH_CHECKPOINT_DIR"


def _print(record: dict) -> None:
    sys.stdout.write(json.dumps(record) + "\n")


def _diag(message: str, **extra) -> None:
    sys.stderr.write(json.dumps({"error": message, **extra}) + "\n")


def _read_jsonl(path: str) -> list[list[int]]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _cmd_contents(args) -> int:
    sols = solve_content_system(args.d, args.w, args.a, args.m)
    for mu in sols:
        _print(list(mu))
    if args.golden:
        if args.golden == "reference":
            golden = load_reference_contents()
        else:
            golden = {tuple(row) for row in _read_jsonl(args.golden)}
        if set(sols) != golden:
            _diag(
                "golden mismatch",
                missing=sorted(list(t) for t in golden - set(sols)),
                extra=sorted(list(t) for t in set(sols) - golden),
            )
            return EXIT_WITNESS
    return EXIT_OK


def _cmd_bracelets(args) -> int:
    mu = json.loads(args.content)
    if sum(mu) != args.d:
        _diag(f"content sums to {sum(mu)}, expected d={args.d}")
        return EXIT_USAGE
    if len(mu) != 2 * args.m + 1:
        _diag(f"content length {len(mu)} != 2m+1 = {2 * args.m + 1}")
        return EXIT_USAGE
    for rep in canon.bracelets(mu, paf_zero_only=args.paf_zero_only):
        _print(
            {
                "content": list(mu),
                "bracelet": [int(v) for v in rep],
                "paf_zero": bool(args.paf_zero_only) or is_paf_zero(rep),
            }
        )
    return EXIT_OK


def _cmd_lift(args) -> int:
    rows = _read_jsonl(args.bracelet_file)
    if not rows:
        _diag("bracelet file is empty")
        return EXIT_USAGE
    if not 0 <= args.line < len(rows):
        _diag(f"--line {args.line} out of range for {len(rows)} rows")
        return EXIT_USAGE
    B = rows[args.line]
    if args.n % args.m != 0 or args.n // args.m != len(B):
        _diag(f"n={args.n}, m={args.m} incompatible with sequence length {len(B)}")
        return EXIT_USAGE
    if args.shard_index >= args.shards:
        _diag("--shard-index must be smaller than --shards")
        return EXIT_USAGE
    plan = liftsearch.plan_shards(B, args.m, args.shards)
    if args.shard_index >= len(plan.shards):
        _diag(
            f"plan produced {len(plan.shards)} shards; --shard-index out of range"
        )
        return EXIT_USAGE
    checkpoint = args.checkpoint
    if checkpoint is None and os.environ.get(CHECKPOINT_ENV):
        os.makedirs(os.environ[CHECKPOINT_ENV], exist_ok=True)
        checkpoint = os.path.join(
            os.environ[CHECKPOINT_ENV], f"lift_shard{args.shard_index:05d}.jsonl"
        )
    outcome = liftsearch.search_shard(
        plan,
        args.shard_index,
        checkpoint_path=checkpoint,
        checkpoint_every=args.checkpoint_every,
        max_checked=args.max_checked,
        wall_budget=args.budget,
        use_filter=args.filter,
    )
    rec = outcome.to_record()
    rec.pop("wall_seconds", None)  # timing stays in the ledger file
    rec["shards"] = len(plan.shards)
    rec["shard_size"] = plan.shards[args.shard_index].size
    _print(rec)
    if outcome.status == liftsearch.WITNESS_FOUND:
        return EXIT_WITNESS
    if outcome.status == liftsearch.ABORTED:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_verify(args) -> int:
    rows = _read_jsonl(args.seq_file)
    if not rows:
        _diag("sequence file is empty")
        return EXIT_USAGE
    all_ok = True
    for i, row in enumerate(rows):
        seq = np.array(row, dtype=np.int64)
        try:
            ok = verify_cw(seq, args.w)
        except NonSquareWeightError as exc:
            _diag(str(exc))
            return EXIT_USAGE
        ternary = bool(np.isin(seq, (-1, 0, 1)).all())
        matrix_ok = verify_cw_matrix(seq, args.w) if ternary else None
        rec = {"line": i, "ok": bool(ok), "ternary": ternary}
        if matrix_ok is not None:
            rec["matrix_ok"] = bool(matrix_ok)
        _print(rec)
        all_ok = all_ok and ok and (matrix_ok is not False)
    return EXIT_OK if all_ok else EXIT_WITNESS


def _cmd_pipeline(args) -> int:
    checkpoint_dir = args.checkpoint_dir or os.environ.get(CHECKPOINT_ENV) or None
    cfg = pipeline.PipelineConfig(
        shard_hint=args.shards,
        workers=args.workers,
        wall_budget=args.budget,
        max_checked_per_shard=args.max_checked,
        checkpoint_dir=checkpoint_dir,
        use_filter=args.filter,
    )
    result = pipeline.run_nonexistence(args.n, args.w, args.m, cfg)
    _print(result.manifest)
    if result.verdict == pipeline.EXISTS:
        return EXIT_WITNESS
    if result.verdict == pipeline.INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwsearch",
        description="Existence search for circulant weighing matrices "
        "via sequence compression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("contents", help="enumerate feasible compressed contents")
    p.add_argument("--d", type=int, required=True, help="compressed length")
    p.add_argument("--w", type=int, required=True, help="weight (sum of squares)")
    p.add_argument("--a", type=int, required=True, help="row sum")
    p.add_argument("--m", type=int, required=True, help="compression factor")
    p.add_argument(
        "--golden",
        help="JSONL file to compare against as a set ('reference' for the "
        "packaged 76-content file); exit 1 on mismatch",
    )
    p.set_defaults(func=_cmd_contents)

    p = sub.add_parser("bracelets", help="canonical representatives of a content")
    p.add_argument("--content", required=True, help="JSON content vector")
    p.add_argument("--d", type=int, required=True, help="sequence length")
    p.add_argument("--m", type=int, required=True, help="entry bound")
    p.add_argument("--paf-zero-only", action="store_true", dest="paf_zero_only")
    p.set_defaults(func=_cmd_bracelets)

    p = sub.add_parser("lift", help="scan one shard of a compression preimage")
    p.add_argument("--bracelet-file", required=True, dest="bracelet_file")
    p.add_argument("--line", type=int, default=0, help="row of the file to use")
    p.add_argument("--n", type=int, required=True, help="uncompressed length")
    p.add_argument("--m", type=int, required=True, help="compression factor")
    p.add_argument("--shards", type=int, default=1, help="shard count hint")
    p.add_argument("--shard-index", type=int, required=True, dest="shard_index")
    p.add_argument("--checkpoint", help="ledger path (default from env)")
    p.add_argument(
        "--checkpoint-every",
        type=int,
        default=liftsearch.DEFAULT_CHECKPOINT_EVERY,
        dest="checkpoint_every",
    )
    p.add_argument("--max-checked", type=int, default=None, dest="max_checked")
    p.add_argument("--budget", type=float, default=None, help="wall seconds")
    p.add_argument("--filter", action="store_true", help="incremental PAF filter")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("verify", help="verify candidate first rows from JSONL")
    p.add_argument("--seq-file", required=True, dest="seq_file")
    p.add_argument("--w", type=int, required=True, help="weight")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("pipeline", help="full existence run")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--budget", type=float, default=None, help="wall seconds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--shards", type=int, default=1, help="shard count hint")
    p.add_argument("--max-checked", type=int, default=None, dest="max_checked")
    p.add_argument("--checkpoint-dir", dest="checkpoint_dir")
    p.add_argument("--filter", action="store_true")
    p.set_defaults(func=_cmd_pipeline)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, NonSquareWeightError, OSError, json.JSONDecodeError) as exc:
        _diag(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
