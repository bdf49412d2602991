"""Exact reference oracles and baseline algorithms for small instances.

The two-stage objective F(S) sums, over functions, the best value of any
subset of S within the cardinality budget.  That inner maximization is
NP-hard in general, so the exact routines here enumerate and are protected by
explicit call-count guards; the greedy surrogate scales instead.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable

from .exceptions import GuardExceededError
from .functions import Oracle
from .instances import Instance
from .solver import TwoStageSolution, replacement_greedy

__all__ = [
    "EXACT_EVAL_GUARD",
    "BRUTE_FORCE_GUARD",
    "ExactResult",
    "exact_eval_cost",
    "brute_force_cost",
    "evaluate_F_exact",
    "evaluate_F_greedy",
    "greedy_witnesses",
    "brute_force_optimum",
    "replacement_greedy",
    "random_baseline",
]

EXACT_EVAL_GUARD = 10**6
BRUTE_FORCE_GUARD = 10**7


@dataclass(frozen=True)
class ExactResult:
    """An exactly computed value plus what achieved it.

    For F-evaluation the witness is one argmax subset per function; for the
    brute-force optimum it is the single optimal reduced set.  Ties resolve
    to the lexicographically smallest sorted item tuple.
    """

    value: float
    witness: tuple[frozenset[int], ...] | frozenset[int]


def exact_eval_cost(set_size: int, k: int) -> int:
    """Subsets of one size-|S| set that exact F-evaluation probes per function."""
    return sum(math.comb(set_size, j) for j in range(min(k, set_size) + 1))


def brute_force_cost(instance: Instance) -> int:
    """Total oracle calls for enumerating every |S| <= l reduced set."""
    per_size = 0
    for s in range(instance.l + 1):
        per_size += math.comb(instance.n, s) * exact_eval_cost(s, instance.k)
    return per_size * instance.m


def _best_subset(oracle: Oracle, S: Iterable[int], k: int) -> tuple[float, tuple[int, ...]]:
    """Enumerate subsets of S up to size k; max value, lex-smallest witness."""
    members = sorted(S)
    best_val: float | None = None
    best_tup: tuple[int, ...] | None = None
    for size in range(min(k, len(members)) + 1):
        for combo in itertools.combinations(members, size):
            val = oracle.eval(frozenset(combo))
            if best_val is None or val > best_val or (val == best_val and combo < best_tup):
                best_val = val
                best_tup = combo
    return best_val, best_tup


def evaluate_F_exact(instance: Instance, S: Iterable[int]) -> ExactResult:
    """Exact two-stage value of the reduced set S by per-function enumeration.

    Guarded: refuses when one function would need more than 10^6 subset
    evaluations.  A dummy-free witness always wins ties, because dropping a
    dummy never changes the value and shortens the tuple.
    """
    S = frozenset(S)
    cost = exact_eval_cost(len(S), instance.k)
    if cost > EXACT_EVAL_GUARD:
        raise GuardExceededError(
            f"exact evaluation of a {len(S)}-item set with k={instance.k} needs "
            f"{cost} subset evaluations per function, limit {EXACT_EVAL_GUARD}; "
            "use evaluate_F_greedy instead"
        )
    total = 0.0
    witnesses = []
    for oracle in instance.oracles():
        val, tup = _best_subset(oracle, S, instance.k)
        total += val
        witnesses.append(frozenset(tup))
    return ExactResult(total, tuple(witnesses))


def _greedy_feasible(oracle: Oracle, S: Iterable[int], k: int) -> tuple[frozenset[int], float]:
    """Build one feasible set by strictly-improving greedy restricted to S."""
    pool = sorted(S)
    A: frozenset[int] = frozenset()
    current = oracle.eval(A)
    for _ in range(k):
        best_gain = 0.0
        best_item = None
        best_value = current
        for x in pool:
            if x in A:
                continue
            val = oracle.eval(A | {x})
            gain = val - current
            if gain > best_gain:
                best_gain = gain
                best_item = x
                best_value = val
        if best_item is None:
            break
        A |= {best_item}
        current = best_value
    return A, current


def greedy_witnesses(
    instance: Instance, S: Iterable[int]
) -> tuple[tuple[frozenset[int], ...], float]:
    """Per-function greedy feasible sets inside S and their summed value."""
    S = frozenset(S)
    witnesses = []
    total = 0.0
    for oracle in instance.oracles():
        A, value = _greedy_feasible(oracle, S, instance.k)
        witnesses.append(A)
        total += value
    return tuple(witnesses), total


def evaluate_F_greedy(instance: Instance, S: Iterable[int]) -> float:
    """Greedy surrogate for the two-stage value: per function, k rounds of
    adding the best strictly-improving item of S, stopping early when nothing
    improves.  Never exceeds the exact value."""
    return greedy_witnesses(instance, S)[1]


def brute_force_optimum(instance: Instance) -> ExactResult:
    """Optimal reduced set by enumerating every real-item S with |S| <= l.

    Dummies are skipped outright: they never change any value, so an optimum
    over real items is an optimum over the extended ground set too.  Ties
    resolve to the lexicographically smallest S.
    """
    cost = brute_force_cost(instance)
    if cost > BRUTE_FORCE_GUARD:
        raise GuardExceededError(
            f"brute-force optimum needs {cost} oracle calls, limit {BRUTE_FORCE_GUARD}"
        )
    best_val: float | None = None
    best_tup: tuple[int, ...] | None = None
    for size in range(instance.l + 1):
        for combo in itertools.combinations(range(instance.n), size):
            val = evaluate_F_exact(instance, combo).value
            if best_val is None or val > best_val or (val == best_val and combo < best_tup):
                best_val = val
                best_tup = combo
    return ExactResult(best_val, frozenset(best_tup))


def random_baseline(instance: Instance, seed: int) -> TwoStageSolution:
    """Uniformly random size-l reduced set with greedy feasible sets.

    A control: any advantage of the guided reductions must show up against
    this."""
    rng = random.Random(seed)
    S = frozenset(rng.sample(range(instance.n), instance.l))
    oracles = instance.oracles()
    Ts = tuple(_greedy_feasible(o, S, instance.k)[0] for o in oracles)
    return TwoStageSolution(S, Ts, sum(o.eval_count for o in oracles), seed)
