"""Command-line interface.

Four subcommands: gen writes a synthetic instance as JSON, solve runs one
algorithm over an instance and writes the trial CSV, eval prints the
objective value and witnesses of an explicit reduced set, and bench executes
a JSON-configured sweep into a single CSV.

Exit codes: 0 on success, 2 for validation and input errors (argparse uses
the same code for bad flags), 3 when an enumeration guard refuses the work.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .exceptions import GuardExceededError, TwoStageError, ValidationError
from .harness import RunConfig, TrialRecord, run_experiment, write_csv
from .instances import (
    GENERATOR_KINDS,
    Instance,
    generate_instance,
    parse_instance,
    serialize_instance,
)
from .reference import evaluate_F_exact, greedy_witnesses

__all__ = ["main", "build_parser"]

_ALGO_NAMES = {
    "sampling-greedy": "sampling_greedy",
    "replacement-greedy": "replacement_greedy",
    "random": "random_baseline",
    "brute-force": "brute_force",
}

_GENERATE_FIELDS = ("kind", "n", "m", "k", "l", "seed")
_BENCH_FIELDS = ("id", "instance", "generate", "algorithm", "trials", "base_seed", "f_eval_mode")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twostage",
        description="Two-stage submodular maximization: reduce a ground set "
        "so per-function cardinality-constrained maximization stays near-optimal.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic instance as JSON")
    gen.add_argument("--kind", required=True, choices=GENERATOR_KINDS)
    gen.add_argument("--n", required=True, type=int, help="ground set size")
    gen.add_argument("--m", required=True, type=int, help="number of functions")
    gen.add_argument("--k", required=True, type=int, help="per-function budget")
    gen.add_argument("--l", required=True, type=int, help="reduction budget")
    gen.add_argument("--seed", required=True, type=int)
    gen.add_argument("--out", required=True, help="output instance file")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="run one algorithm, write trial CSV")
    solve.add_argument("--instance", required=True, help="instance JSON file")
    solve.add_argument("--algo", required=True, choices=sorted(_ALGO_NAMES))
    solve.add_argument("--trials", type=int, default=1)
    solve.add_argument("--seed", type=int, default=0, help="base seed; trial t adds t")
    solve.add_argument("--f-eval", choices=("exact", "greedy", "auto"), default="auto")
    solve.add_argument("--out", required=True, help="output CSV file")
    solve.set_defaults(func=_cmd_solve)

    ev = sub.add_parser("eval", help="evaluate an explicit reduced set")
    ev.add_argument("--instance", required=True, help="instance JSON file")
    ev.add_argument("--set", required=True, dest="items",
                    help='comma-separated item ids, e.g. "0,3,5"')
    ev.add_argument("--f-eval", choices=("exact", "greedy"), default="exact")
    ev.set_defaults(func=_cmd_eval)

    bench = sub.add_parser("bench", help="run a configured sweep into one CSV")
    bench.add_argument("--config", required=True, help="sweep config JSON file")
    bench.add_argument("--out", required=True, help="output CSV file")
    bench.set_defaults(func=_cmd_bench)

    return parser


def _load_instance(path: str) -> Instance:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ValidationError(f"cannot read instance file {path}: {exc}") from exc
    return parse_instance(data)


def _parse_item_set(text: str) -> frozenset[int]:
    stripped = text.strip()
    if not stripped:
        return frozenset()
    items = set()
    for token in stripped.split(","):
        token = token.strip()
        try:
            items.add(int(token))
        except ValueError:
            raise ValidationError(
                f"set must be comma-separated integers, got {token!r}"
            ) from None
    return frozenset(items)


def _cmd_gen(args: argparse.Namespace) -> int:
    instance = generate_instance(args.kind, args.n, args.m, args.k, args.l, args.seed)
    Path(args.out).write_text(serialize_instance(instance) + "\n", encoding="utf-8")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    config = RunConfig(
        _ALGO_NAMES[args.algo],
        trials=args.trials,
        base_seed=args.seed,
        f_eval_mode=args.f_eval,
    )
    records = run_experiment(instance, config, instance_id=Path(args.instance).stem)
    with open(args.out, "w", encoding="utf-8", newline="") as fp:
        write_csv(records, fp)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    instance = _load_instance(args.instance)
    S = _parse_item_set(args.items)
    for x in S:
        if not 0 <= x < instance.n + instance.l:
            raise ValidationError(
                f"item {x} out of range, ground set has {instance.n} real "
                f"and {instance.l} dummy ids"
            )
    if args.f_eval == "exact":
        result = evaluate_F_exact(instance, S)
        value, witnesses = result.value, result.witness
    else:
        witnesses, value = greedy_witnesses(instance, S)
    payload = {
        "F": value,
        "mode": args.f_eval,
        "witnesses": [sorted(w) for w in witnesses],
    }
    print(json.dumps(payload))
    return 0


def _bench_entry_error(index: int, message: str) -> ValidationError:
    return ValidationError(f"bench entry {index}: {message}")


def _bench_instance(index: int, entry: dict) -> tuple[str, Instance]:
    has_path = "instance" in entry
    has_spec = "generate" in entry
    if has_path == has_spec:
        raise _bench_entry_error(index, "needs exactly one of 'instance' or 'generate'")
    if has_path:
        path = entry["instance"]
        if not isinstance(path, str):
            raise _bench_entry_error(index, "'instance' must be a file path string")
        return Path(path).stem, _load_instance(path)
    spec = entry["generate"]
    if not isinstance(spec, dict):
        raise _bench_entry_error(index, "'generate' must be a JSON object")
    unknown = sorted(set(spec) - set(_GENERATE_FIELDS))
    if unknown:
        raise _bench_entry_error(index, f"unknown generate field(s): {', '.join(unknown)}")
    missing = sorted(set(_GENERATE_FIELDS) - set(spec))
    if missing:
        raise _bench_entry_error(index, f"missing generate field(s): {', '.join(missing)}")
    instance = generate_instance(
        spec["kind"], spec["n"], spec["m"], spec["k"], spec["l"], spec["seed"]
    )
    default_id = "{kind}-n{n}-m{m}-k{k}-l{l}-s{seed}".format(**spec)
    return default_id, instance


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read config file {args.config}: {exc}") from exc
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(entries, list):
        raise ValidationError("bench config must be a JSON array")

    records: list[TrialRecord] = []
    for index, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise _bench_entry_error(index, "must be a JSON object")
        unknown = sorted(set(entry) - set(_BENCH_FIELDS))
        if unknown:
            raise _bench_entry_error(index, f"unknown field(s): {', '.join(unknown)}")
        if "algorithm" not in entry:
            raise _bench_entry_error(index, "missing field: algorithm")
        default_id, instance = _bench_instance(index, entry)
        config = RunConfig(
            entry["algorithm"],
            trials=entry.get("trials", 1),
            base_seed=entry.get("base_seed", 0),
            f_eval_mode=entry.get("f_eval_mode", "auto"),
        )
        instance_id = entry.get("id", default_id)
        if not isinstance(instance_id, str) or not instance_id:
            raise _bench_entry_error(index, "'id' must be a non-empty string")
        records.extend(run_experiment(instance, config, instance_id=instance_id))

    with open(args.out, "w", encoding="utf-8", newline="") as fp:
        write_csv(records, fp)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TwoStageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
