"""Randomized greedy ground-set reduction with trimming.

Over l rounds, every extended item (real or dummy) is scored by its total
local-search gain against the current per-function feasible sets, one of the
top l not-yet-selected candidates is drawn uniformly, and each feasible set
that strictly benefits absorbs the pick and is trimmed back to a state where
no member hurts.  Dummy ids let a round select "nothing"; they stay in S for
budget accounting during the run and are stripped from the returned solution.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .exceptions import PreconditionError
from .functions import Oracle
from .instances import Instance
from .local_search import apply_action, local_gain, score_items, select_top_l

__all__ = [
    "RoundState",
    "TwoStageSolution",
    "EstimateSummary",
    "trim",
    "apply_candidate",
    "sampling_greedy",
    "replacement_greedy",
    "expected_F_estimate",
    "feasible_sets_value",
]


@dataclass(frozen=True)
class RoundState:
    """Snapshot handed to an observer after each solver round completes."""

    round_index: int
    S: frozenset[int]
    Ts: tuple[frozenset[int], ...]
    evals: int


@dataclass(frozen=True)
class TwoStageSolution:
    """Reduced set S (real items only), per-function feasible sets, and the
    oracle-call count of the solve.  seed is None for deterministic runs."""

    S: frozenset[int]
    Ts: tuple[frozenset[int], ...]
    evals: int
    seed: int | None


@dataclass(frozen=True)
class EstimateSummary:
    mean: float
    stddev: float
    trials: int


def trim(f: Oracle, B: Iterable[int]) -> frozenset[int]:
    """Single ascending-id pass dropping items whose removal marginal is
    strictly negative, tested against the shrinking set.

    The result A satisfies f(A) >= f(B) and f(A) - f(A - {x}) >= 0 for every
    remaining x; one pass suffices because removals only raise the remaining
    removal marginals under submodularity.
    """
    kept = set(B)
    current = f.eval(kept)
    for x in sorted(kept):
        without = f.eval(kept - {x})
        if current - without < 0:
            kept.discard(x)
            current = without
    return frozenset(kept)


def apply_candidate(f: Oracle, T: Iterable[int], x: int, k: int) -> frozenset[int]:
    """Absorb x into T when its local gain is strictly positive, then trim."""
    current = frozenset(T)
    action = local_gain(f, x, current, k)
    if action.gain > 0.0:
        return trim(f, apply_action(current, x, action))
    return current


def _pick_uniform(rng: random.Random) -> Callable[[Sequence[int]], int]:
    def pick(candidates: Sequence[int]) -> int:
        return candidates[rng.randrange(len(candidates))]

    return pick


def _pick_first(candidates: Sequence[int]) -> int:
    return candidates[0]


def _greedy_rounds(
    instance: Instance,
    pick: Callable[[Sequence[int]], int],
    top: int,
    on_round: Callable[[RoundState], None] | None,
) -> tuple[set[int], list[frozenset[int]], list[Oracle]]:
    oracles = instance.oracles()
    S: set[int] = set()
    Ts: list[frozenset[int]] = [frozenset() for _ in oracles]
    universe = instance.all_ids
    for round_index in range(1, instance.l + 1):
        scores = score_items(oracles, Ts, universe, instance.k)
        candidates = [s for s in scores if s.item not in S]
        M = select_top_l(candidates, top)
        x_star = pick(sorted(M))
        S.add(x_star)
        Ts = [apply_candidate(f, T, x_star, instance.k) for f, T in zip(oracles, Ts)]
        if on_round is not None:
            on_round(
                RoundState(
                    round_index,
                    frozenset(S),
                    tuple(Ts),
                    sum(o.eval_count for o in oracles),
                )
            )
    return S, Ts, oracles


def sampling_greedy(
    instance: Instance,
    seed: int,
    on_round: Callable[[RoundState], None] | None = None,
) -> TwoStageSolution:
    """Run l rounds of randomized top-l candidate sampling with trimming.

    Each round scores the full extended ground set, keeps the l best-scoring
    items not yet selected (score ties to smaller ids, so dummies fill in only
    when nothing real competes), draws one uniformly with the seeded
    generator, and updates every feasible set that strictly gains.  Identical
    (instance, seed) pairs give identical output.
    """
    rng = random.Random(seed)
    S, Ts, oracles = _greedy_rounds(instance, _pick_uniform(rng), instance.l, on_round)
    real = frozenset(x for x in S if x < instance.n)
    return TwoStageSolution(real, tuple(Ts), sum(o.eval_count for o in oracles), seed)


def replacement_greedy(
    instance: Instance,
    on_round: Callable[[RoundState], None] | None = None,
) -> TwoStageSolution:
    """Deterministic sibling of sampling_greedy: each round takes the single
    highest-scored remaining item instead of sampling from the top l."""
    S, Ts, oracles = _greedy_rounds(instance, _pick_first, 1, on_round)
    real = frozenset(x for x in S if x < instance.n)
    return TwoStageSolution(real, tuple(Ts), sum(o.eval_count for o in oracles), None)


def feasible_sets_value(instance: Instance, Ts: Sequence[Iterable[int]]) -> float:
    """Sum of raw per-function values of the feasible sets, in function order.

    Computed off the descriptors directly so reporting does not disturb any
    oracle counter.  This sum never exceeds the two-stage objective of S,
    since each feasible set competes in its function's inner maximization.
    """
    total = 0.0
    for descriptor, T in zip(instance.functions, Ts, strict=True):
        total += descriptor.value(frozenset(T))
    return total


def expected_F_estimate(
    instance: Instance, trials: int, base_seed: int
) -> EstimateSummary:
    """Monte-Carlo mean and sample stddev of the feasible-set value sum over
    sampling_greedy runs seeded base_seed .. base_seed + trials - 1."""
    if trials < 1:
        raise PreconditionError("trials must be ≥ 1")
    sums = []
    for t in range(trials):
        solution = sampling_greedy(instance, base_seed + t)
        sums.append(feasible_sets_value(instance, solution.Ts))
    mean = statistics.fmean(sums)
    stddev = statistics.stdev(sums) if trials > 1 else 0.0
    return EstimateSummary(mean, stddev, trials)
