"""Submodular function zoo and the counting evaluation oracle.

Items are plain integers.  A ground set of ``n`` real items is extended by
``l`` dummy ids ``n .. n+l-1`` that every function ignores, so a selection
round is allowed to pick "nothing".  Complexity accounting is done in oracle
calls, hence every evaluation goes through :class:`Oracle`, which counts.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Collection, Iterable

from .exceptions import PreconditionError, ValidationError

__all__ = [
    "Coverage",
    "FacilityLocation",
    "GraphCut",
    "Modular",
    "FunctionDescriptor",
    "Oracle",
    "build_oracles",
    "descriptor_from_json",
]


def _check_weight(label: str, w: object) -> float:
    if not isinstance(w, (int, float)) or isinstance(w, bool):
        raise ValidationError(f"{label} is not a number")
    w = float(w)
    if not math.isfinite(w):
        raise ValidationError(f"{label} is not finite")
    if w < 0:
        raise ValidationError(f"{label} is negative")
    return w


@dataclass(frozen=True)
class Coverage:
    """Weighted coverage: value of A is the total weight of universe
    elements covered by at least one item in A.

    ``covers[x]`` lists the universe elements item ``x`` covers, so the
    descriptor fixes the number of real items to ``len(covers)``.
    """

    universe_weights: tuple[float, ...]
    covers: tuple[frozenset[int], ...]

    kind = "coverage"
    monotone = True

    def __post_init__(self) -> None:
        weights = tuple(
            _check_weight(f"universe_weights[{i}]", w)
            for i, w in enumerate(self.universe_weights)
        )
        m = len(weights)
        normalized = []
        for i, cover in enumerate(self.covers):
            elems = frozenset(cover)
            for u in elems:
                if not isinstance(u, int) or isinstance(u, bool):
                    raise ValidationError(f"covers[{i}] contains a non-integer element")
                if not 0 <= u < m:
                    raise ValidationError(
                        f"covers[{i}] references universe element {u}, universe has {m} elements"
                    )
            normalized.append(elems)
        object.__setattr__(self, "universe_weights", weights)
        object.__setattr__(self, "covers", tuple(normalized))

    def validate_for(self, n: int) -> None:
        if len(self.covers) != n:
            raise ValidationError(
                f"coverage covers has {len(self.covers)} entries, expected n={n}"
            )

    def value(self, items: Collection[int]) -> float:
        n = len(self.covers)
        covered: set[int] = set()
        for x in items:
            if x < n:
                covered |= self.covers[x]
        weights = self.universe_weights
        return float(sum(weights[u] for u in covered))

    def to_json(self) -> dict:
        return {
            "type": "coverage",
            "universe_weights": list(self.universe_weights),
            "covers": [sorted(c) for c in self.covers],
        }


@dataclass(frozen=True)
class FacilityLocation:
    """Facility location: each client is served by its most similar selected
    item, value is the sum over clients.  ``similarity[c][x]`` is the affinity
    of client ``c`` for item ``x``; an empty selection serves nobody.
    """

    similarity: tuple[tuple[float, ...], ...]

    kind = "facility_location"
    monotone = True

    def __post_init__(self) -> None:
        rows = []
        width = None
        for c, row in enumerate(self.similarity):
            checked = tuple(
                _check_weight(f"similarity[{c}][{x}]", w) for x, w in enumerate(row)
            )
            if width is None:
                width = len(checked)
            elif len(checked) != width:
                raise ValidationError(
                    f"similarity row {c} has length {len(checked)}, expected {width}"
                )
            rows.append(checked)
        object.__setattr__(self, "similarity", tuple(rows))

    def validate_for(self, n: int) -> None:
        for c, row in enumerate(self.similarity):
            if len(row) != n:
                raise ValidationError(
                    f"facility_location similarity row {c} has length {len(row)}, expected n={n}"
                )

    def value(self, items: Collection[int]) -> float:
        if not self.similarity:
            return 0.0
        n = len(self.similarity[0])
        selected = [x for x in items if x < n]
        if not selected:
            return 0.0
        return float(sum(max(row[x] for x in selected) for row in self.similarity))

    def to_json(self) -> dict:
        return {"type": "facility_location", "similarity": [list(r) for r in self.similarity]}


@dataclass(frozen=True)
class GraphCut:
    """Weighted graph cut: value of A is the total weight of edges with
    exactly one endpoint in A.  Non-monotone, the canonical stress case.
    Edges are (u, v, weight) triples over real item ids.
    """

    edges: tuple[tuple[int, int, float], ...]

    kind = "graph_cut"
    monotone = False

    def __post_init__(self) -> None:
        normalized = []
        for i, edge in enumerate(self.edges):
            if len(edge) != 3:
                raise ValidationError(f"edges[{i}] must be a (u, v, weight) triple")
            u, v, w = edge
            for endpoint in (u, v):
                if not isinstance(endpoint, int) or isinstance(endpoint, bool):
                    raise ValidationError(f"edges[{i}] endpoint {endpoint!r} is not an integer")
                if endpoint < 0:
                    raise ValidationError(f"edges[{i}] endpoint {endpoint} is negative")
            if u == v:
                raise ValidationError(f"edges[{i}] is a self-loop on vertex {u}")
            normalized.append((u, v, _check_weight(f"edges[{i}] weight", w)))
        object.__setattr__(self, "edges", tuple(normalized))

    def validate_for(self, n: int) -> None:
        for i, (u, v, _) in enumerate(self.edges):
            if u >= n or v >= n:
                raise ValidationError(
                    f"graph_cut edges[{i}] endpoint {max(u, v)} out of range for n={n}"
                )

    def value(self, items: Collection[int]) -> float:
        # Dummy ids are never edge endpoints, so they drop out for free.
        return float(
            sum(w for u, v, w in self.edges if (u in items) != (v in items))
        )

    def to_json(self) -> dict:
        return {"type": "graph_cut", "edges": [[u, v, w] for u, v, w in self.edges]}


@dataclass(frozen=True)
class Modular:
    """Additive function: value of A is the sum of per-item values.
    Trivially submodular and monotone, useful as a sanity anchor.
    """

    values: tuple[float, ...]

    kind = "modular"
    monotone = True

    def __post_init__(self) -> None:
        checked = tuple(
            _check_weight(f"values[{i}]", w) for i, w in enumerate(self.values)
        )
        object.__setattr__(self, "values", checked)

    def validate_for(self, n: int) -> None:
        if len(self.values) != n:
            raise ValidationError(
                f"modular values has {len(self.values)} entries, expected n={n}"
            )

    def value(self, items: Collection[int]) -> float:
        n = len(self.values)
        return float(sum(self.values[x] for x in items if x < n))

    def to_json(self) -> dict:
        return {"type": "modular", "values": list(self.values)}


FunctionDescriptor = Coverage | FacilityLocation | GraphCut | Modular

_DESCRIPTOR_FIELDS = {
    "coverage": ("universe_weights", "covers"),
    "facility_location": ("similarity",),
    "graph_cut": ("edges",),
    "modular": ("values",),
}


def descriptor_from_json(obj: object) -> FunctionDescriptor:
    """Build a descriptor from its JSON dict form, rejecting unknown fields."""
    if not isinstance(obj, dict):
        raise ValidationError("function descriptor must be a JSON object")
    kind = obj.get("type")
    if kind not in _DESCRIPTOR_FIELDS:
        raise ValidationError(f"unknown function type {kind!r}")
    expected = _DESCRIPTOR_FIELDS[kind]
    unknown = sorted(set(obj) - {"type", *expected})
    if unknown:
        raise ValidationError(f"unknown {kind} field(s): {', '.join(unknown)}")
    missing = sorted(set(expected) - set(obj))
    if missing:
        raise ValidationError(f"{kind} is missing field(s): {', '.join(missing)}")
    if kind == "coverage":
        covers = obj["covers"]
        if not isinstance(covers, list) or not all(isinstance(c, list) for c in covers):
            raise ValidationError("coverage covers must be a list of lists")
        return Coverage(tuple(obj["universe_weights"]), tuple(frozenset(c) for c in covers))
    if kind == "facility_location":
        sim = obj["similarity"]
        if not isinstance(sim, list) or not all(isinstance(r, list) for r in sim):
            raise ValidationError("facility_location similarity must be a list of rows")
        return FacilityLocation(tuple(tuple(r) for r in sim))
    if kind == "graph_cut":
        edges = obj["edges"]
        if not isinstance(edges, list):
            raise ValidationError("graph_cut edges must be a list")
        return GraphCut(tuple(tuple(e) for e in edges))
    values = obj["values"]
    if not isinstance(values, list):
        raise ValidationError("modular values must be a list")
    return Modular(tuple(values))


class Oracle:
    """Evaluation oracle for one descriptor over an extended ground set.

    Wraps a descriptor with the (n, l) geometry, validates item ids, and
    counts every evaluation.  The counter increment is lock-protected so
    concurrent workers may share an oracle; everything else is read-only
    after construction.
    """

    __slots__ = ("descriptor", "n", "l", "_limit", "_count", "_lock")

    def __init__(self, descriptor: FunctionDescriptor, n: int, l: int) -> None:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValidationError("n must be a positive integer")
        if not isinstance(l, int) or isinstance(l, bool) or l < 0:
            raise ValidationError("l must be a non-negative integer")
        descriptor.validate_for(n)
        self.descriptor = descriptor
        self.n = n
        self.l = l
        self._limit = n + l
        self._count = 0
        self._lock = threading.Lock()

    @property
    def eval_count(self) -> int:
        return self._count

    def is_dummy(self, x: int) -> bool:
        return x >= self.n

    def eval(self, items: Collection[int]) -> float:
        """Value of the item set.  Counts as one oracle call."""
        limit = self._limit
        for x in items:
            if not 0 <= x < limit:
                raise PreconditionError(
                    f"item {x} out of range, ground set has {self.n} real and {self.l} dummy ids"
                )
        with self._lock:
            self._count += 1
        return self.descriptor.value(items)

    def marginal(self, x: int, items: Collection[int]) -> float:
        """Gain of adding x to the set: eval(A + x) - eval(A).  Two calls."""
        base = frozenset(items)
        return self.eval(base | {x}) - self.eval(base)


def build_oracles(
    functions: Iterable[FunctionDescriptor], n: int, l: int
) -> list[Oracle]:
    """Instantiate one counting oracle per descriptor over the same ground set."""
    return [Oracle(f, n, l) for f in functions]
