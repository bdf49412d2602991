"""Experiment harness: trial sweeps, optimality ratios, CSV reporting.

A run takes one instance and one RunConfig, executes the configured number of
trials with fanned-out seeds, and produces one TrialRecord per trial.  When
the instance is small enough for the brute-force guard, the optimum is
computed once and every record carries its ratio against it.  Records sort by
(instance_id, algorithm, seed) so the CSV is order-deterministic no matter
how trials were scheduled.
"""

from __future__ import annotations

import csv
import io
import itertools
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .exceptions import ValidationError
from .instances import Instance
from .reference import (
    BRUTE_FORCE_GUARD,
    EXACT_EVAL_GUARD,
    brute_force_cost,
    brute_force_optimum,
    evaluate_F_exact,
    evaluate_F_greedy,
    exact_eval_cost,
    random_baseline,
)
from .solver import feasible_sets_value, replacement_greedy, sampling_greedy

__all__ = [
    "ALGORITHMS",
    "F_EVAL_MODES",
    "CSV_HEADER",
    "RunConfig",
    "TrialRecord",
    "evaluate_reported_F",
    "run_experiment",
    "write_csv",
    "render_csv",
]

ALGORITHMS = ("sampling_greedy", "replacement_greedy", "random_baseline", "brute_force")
F_EVAL_MODES = ("exact", "greedy", "auto")

CSV_HEADER = (
    "instance_id",
    "algorithm",
    "seed",
    "F_reported",
    "F_mode",
    "sum_fT",
    "F_opt",
    "ratio",
    "evals",
    "wall_ms",
)


@dataclass(frozen=True)
class RunConfig:
    """What to run: which algorithm, how many trials, seeding, and how the
    reported objective is evaluated.  brute_force ignores trials and seeds
    and always yields a single record."""

    algorithm: str
    trials: int = 1
    base_seed: int = 0
    f_eval_mode: str = "auto"

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValidationError(f"unknown algorithm {self.algorithm!r}")
        if not isinstance(self.trials, int) or isinstance(self.trials, bool):
            raise ValidationError("trials must be an integer")
        if self.trials < 1:
            raise ValidationError("trials must be ≥ 1")
        if not isinstance(self.base_seed, int) or isinstance(self.base_seed, bool):
            raise ValidationError("base_seed must be an integer")
        if self.f_eval_mode not in F_EVAL_MODES:
            raise ValidationError(f"unknown F evaluation mode {self.f_eval_mode!r}")


@dataclass(frozen=True)
class TrialRecord:
    """One CSV row: the solution value of a single trial plus bookkeeping.

    F_opt and ratio are either both present or both absent; seed is None only
    for the deterministic brute_force record.  evals counts oracle calls made
    by the algorithm itself, not by the reporting evaluation.
    """

    instance_id: str
    algorithm: str
    seed: int | None
    F_reported: float
    F_mode: str
    sum_fT: float
    F_opt: float | None
    ratio: float | None
    evals: int
    wall_ms: float


def evaluate_reported_F(
    instance: Instance, S: Iterable[int], mode: str
) -> tuple[float, str]:
    """Objective value of a reduced set under the requested evaluation mode.

    Returns the value and the mode actually used.  "exact" enumerates and
    raises when the enumeration guard trips; "greedy" always uses the
    surrogate; "auto" picks exact whenever the guard allows it.
    """
    if mode not in F_EVAL_MODES:
        raise ValidationError(f"unknown F evaluation mode {mode!r}")
    S = frozenset(S)
    if mode == "greedy":
        return evaluate_F_greedy(instance, S), "greedy"
    if mode == "auto" and exact_eval_cost(len(S), instance.k) > EXACT_EVAL_GUARD:
        return evaluate_F_greedy(instance, S), "greedy"
    return evaluate_F_exact(instance, S).value, "exact"


def _ratio(reported: float, optimum: float) -> float:
    # A zero optimum pins every reported value to zero, so 0/0 reads as 1.0.
    if optimum == 0.0:
        return 1.0
    return reported / optimum


def _solve(instance: Instance, algorithm: str, seed: int):
    if algorithm == "sampling_greedy":
        return sampling_greedy(instance, seed)
    if algorithm == "replacement_greedy":
        return replacement_greedy(instance)
    return random_baseline(instance, seed)


def _record_key(record: TrialRecord) -> tuple:
    seed = -1 if record.seed is None else record.seed
    return (record.instance_id, record.algorithm, seed)


def run_experiment(
    instance: Instance,
    config: RunConfig,
    instance_id: str = "instance",
    workers: int = 1,
) -> list[TrialRecord]:
    """Execute the configured trials and return sorted TrialRecords.

    Trial t runs with seed base_seed + t.  The optimum (hence F_opt and
    ratio) is filled in whenever the instance fits the brute-force guard;
    larger instances get blank ratio columns.  workers > 1 runs trials in a
    thread pool; the sorted output is identical either way, wall_ms aside.
    """
    if not isinstance(workers, int) or isinstance(workers, bool) or workers < 1:
        raise ValidationError("workers must be ≥ 1")

    if config.algorithm == "brute_force":
        start = time.perf_counter()
        optimum = brute_force_optimum(instance)
        wall_ms = (time.perf_counter() - start) * 1000.0
        per_function = evaluate_F_exact(instance, optimum.witness)
        record = TrialRecord(
            instance_id,
            "brute_force",
            None,
            optimum.value,
            "exact",
            feasible_sets_value(instance, per_function.witness),
            optimum.value,
            1.0,
            brute_force_cost(instance),
            wall_ms,
        )
        return [record]

    opt_value: float | None = None
    if brute_force_cost(instance) <= BRUTE_FORCE_GUARD:
        opt_value = brute_force_optimum(instance).value

    def one_trial(t: int) -> TrialRecord:
        seed = config.base_seed + t
        start = time.perf_counter()
        solution = _solve(instance, config.algorithm, seed)
        wall_ms = (time.perf_counter() - start) * 1000.0
        reported, mode_used = evaluate_reported_F(instance, solution.S, config.f_eval_mode)
        return TrialRecord(
            instance_id,
            config.algorithm,
            seed,
            reported,
            mode_used,
            feasible_sets_value(instance, solution.Ts),
            opt_value,
            None if opt_value is None else _ratio(reported, opt_value),
            solution.evals,
            wall_ms,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one_trial, range(config.trials)))
    else:
        records = [one_trial(t) for t in range(config.trials)]
    records.sort(key=_record_key)
    return records


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _trial_row(r: TrialRecord) -> list[str]:
    return [
        r.instance_id,
        r.algorithm,
        "" if r.seed is None else str(r.seed),
        _fmt(r.F_reported),
        r.F_mode,
        _fmt(r.sum_fT),
        "" if r.F_opt is None else _fmt(r.F_opt),
        "" if r.ratio is None else _fmt(r.ratio),
        str(r.evals),
        _fmt(r.wall_ms),
    ]


def _aggregate_rows(
    instance_id: str, algorithm: str, group: Sequence[TrialRecord]
) -> list[list[str]]:
    values = [r.F_reported for r in group]
    ratios = [r.ratio for r in group]
    have_ratio = all(r is not None for r in ratios)

    def stat_row(label: str, value_stat: float, ratio_stat: float | None) -> list[str]:
        return [
            instance_id,
            algorithm,
            label,
            _fmt(value_stat),
            "",
            "",
            "",
            "" if ratio_stat is None else _fmt(ratio_stat),
            "",
            "",
        ]

    mean_ratio = statistics.fmean(ratios) if have_ratio else None
    if len(group) > 1:
        sd_value = statistics.stdev(values)
        sd_ratio = statistics.stdev(ratios) if have_ratio else None
    else:
        sd_value = 0.0
        sd_ratio = 0.0 if have_ratio else None
    return [
        stat_row("mean", statistics.fmean(values), mean_ratio),
        stat_row("stddev", sd_value, sd_ratio),
    ]


def write_csv(records: Iterable[TrialRecord], fp: TextIO) -> None:
    """Write the fixed-schema CSV: one row per trial, floats at 12 significant
    digits, then per-(instance, algorithm) mean and stddev rows at the end."""
    ordered = sorted(records, key=_record_key)
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in ordered:
        writer.writerow(_trial_row(record))
    for (instance_id, algorithm), group in itertools.groupby(
        ordered, key=lambda r: (r.instance_id, r.algorithm)
    ):
        for row in _aggregate_rows(instance_id, algorithm, list(group)):
            writer.writerow(row)


def render_csv(records: Iterable[TrialRecord]) -> str:
    buffer = io.StringIO()
    write_csv(records, buffer)
    return buffer.getvalue()
