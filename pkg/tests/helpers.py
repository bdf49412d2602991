"""Shared builders and property sweeps used by unit and acceptance tests.

Reference values here are computed by deliberately different code paths than
the library (element-centric coverage, pairwise cut loops), so agreement is
evidence rather than tautology.
"""

from __future__ import annotations

import random

from twostage.functions import Coverage, FacilityLocation, GraphCut, Modular


def zoo_coverage() -> Coverage:
    """Four unit-weight universe elements, three items: {0,1}, {1,2}, {3}."""
    return Coverage((1.0, 1.0, 1.0, 1.0), (frozenset({0, 1}), frozenset({1, 2}), frozenset({3})))


def path_cut() -> GraphCut:
    """Unit-weight path 0 - 1 - 2."""
    return GraphCut(((0, 1, 1.0), (1, 2, 1.0)))


# ---------------------------------------------------------------------------
# Independent reference value functions.

def ref_coverage_value(weights, covers, items) -> float:
    total = 0.0
    for u, w in enumerate(weights):
        if any(u in covers[x] for x in items if x < len(covers)):
            total += w
    return total


def ref_facility_value(similarity, items) -> float:
    total = 0.0
    for row in similarity:
        best = 0.0
        for x in items:
            if x < len(row) and row[x] > best:
                best = row[x]
        total += best
    return total


def ref_cut_value(edges, items) -> float:
    total = 0.0
    for u, v, w in edges:
        inside = (u in items) + (v in items)
        if inside == 1:
            total += w
    return total


def ref_modular_value(values, items) -> float:
    return sum(values[x] for x in items if x < len(values))


# ---------------------------------------------------------------------------
# Random descriptor builders for property sweeps.

def random_coverage(rng: random.Random, n: int) -> Coverage:
    universe = rng.randrange(1, 2 * n + 1)
    weights = tuple(rng.uniform(0.0, 2.0) for _ in range(universe))
    covers = tuple(
        frozenset(u for u in range(universe) if rng.random() < 0.4) for _ in range(n)
    )
    return Coverage(weights, covers)


def random_facility(rng: random.Random, n: int) -> FacilityLocation:
    clients = rng.randrange(1, n + 2)
    return FacilityLocation(
        tuple(tuple(rng.random() for _ in range(n)) for _ in range(clients))
    )


def random_graph_cut(rng: random.Random, n: int) -> GraphCut:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.5:
                edges.append((u, v, rng.random()))
    return GraphCut(tuple(edges))


def random_modular(rng: random.Random, n: int) -> Modular:
    return Modular(tuple(rng.uniform(0.0, 3.0) for _ in range(n)))


DESCRIPTOR_BUILDERS = {
    "coverage": random_coverage,
    "facility_location": random_facility,
    "graph_cut": random_graph_cut,
    "modular": random_modular,
}


def random_descriptor(rng: random.Random, kind: str, n: int):
    return DESCRIPTOR_BUILDERS[kind](rng, n)


def random_subset(rng: random.Random, pool, max_size=None) -> frozenset[int]:
    pool = sorted(pool)
    top = len(pool) if max_size is None else min(max_size, len(pool))
    size = rng.randrange(0, top + 1)
    return frozenset(rng.sample(pool, size))


# ---------------------------------------------------------------------------
# Property sweeps shared with the acceptance suite.  Each returns the number
# of violating samples, so a passing sweep returns 0.

def expected_local_gain(descriptor, x: int, A: frozenset[int], k: int):
    """Exhaustive reference for the best-move gain and its action.

    Works straight off descriptor values with dict loops, independent of the
    library's evaluation caching.  Returns (gain, kind, victim).
    """
    if x in A:
        return 0.0, "noop", None
    base = descriptor.value(A)
    swaps = {y: descriptor.value((A | {x}) - {y}) - base for y in A}
    best_swap = max(swaps.values()) if swaps else None
    add = descriptor.value(A | {x}) - base if len(A) < k else None
    gain = 0.0
    for candidate in (best_swap, add):
        if candidate is not None and candidate > gain:
            gain = candidate
    if gain == 0.0:
        return 0.0, "noop", None
    if len(A) < k and (best_swap is None or add > best_swap):
        return gain, "add", None
    victim = min(y for y, g in swaps.items() if g == best_swap)
    return gain, "swap", victim


def nonnegativity_violations(oracle, rng: random.Random, trials: int) -> int:
    bad = 0
    for _ in range(trials):
        A = random_subset(rng, range(oracle.n + oracle.l))
        if oracle.eval(A) < 0:
            bad += 1
    return bad


def dummy_transparency_violations(oracle, rng: random.Random, trials: int) -> int:
    bad = 0
    for _ in range(trials):
        A = random_subset(rng, range(oracle.n + oracle.l))
        d = rng.randrange(oracle.n, oracle.n + oracle.l)
        if oracle.eval(A | {d}) != oracle.eval(A - {d}):
            bad += 1
    return bad


def submodularity_violations(oracle, rng: random.Random, trials: int, eps: float = 1e-9) -> int:
    ids = range(oracle.n + oracle.l)
    bad = 0
    for _ in range(trials):
        x = rng.choice(ids)
        pool = [y for y in ids if y != x]
        big = random_subset(rng, pool)
        small = frozenset(y for y in big if rng.random() < 0.5)
        if oracle.marginal(x, small) < oracle.marginal(x, big) - eps:
            bad += 1
    return bad


def monotonicity_violations(oracle, rng: random.Random, trials: int, eps: float = 1e-9) -> int:
    ids = range(oracle.n + oracle.l)
    bad = 0
    for _ in range(trials):
        x = rng.choice(ids)
        A = random_subset(rng, [y for y in ids if y != x])
        if oracle.marginal(x, A) < -eps:
            bad += 1
    return bad
