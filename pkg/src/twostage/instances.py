"""Problem instances: validation, JSON round-trip, synthetic generators.

An instance fixes the ground set size n, the per-function budget k, the
reduction budget l, and the list of function descriptors.  The JSON form is
flat and canonical, so generating the same instance twice yields identical
bytes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .exceptions import ValidationError
from .functions import FunctionDescriptor, Oracle, build_oracles, descriptor_from_json

__all__ = [
    "Instance",
    "parse_instance",
    "serialize_instance",
    "generate_instance",
    "GENERATOR_KINDS",
]

_INSTANCE_FIELDS = ("n", "k", "l", "functions")

GENERATOR_KINDS = ("coverage", "facility_location", "graph_cut", "mixed")


@dataclass(frozen=True)
class Instance:
    n: int
    k: int
    l: int
    functions: tuple[FunctionDescriptor, ...]

    def __post_init__(self) -> None:
        for name in ("n", "k", "l"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValidationError(f"{name} must be an integer")
        if self.n < 1:
            raise ValidationError("n must be ≥ 1")
        if self.k < 1:
            raise ValidationError("k must be ≥ 1")
        if self.l < 1:
            raise ValidationError("l must be ≥ 1")
        if self.l > self.n:
            raise ValidationError(f"l={self.l} exceeds n={self.n}")
        functions = tuple(self.functions)
        if not functions:
            raise ValidationError("functions must be non-empty")
        for f in functions:
            f.validate_for(self.n)
        object.__setattr__(self, "functions", functions)

    @property
    def m(self) -> int:
        return len(self.functions)

    @property
    def real_ids(self) -> range:
        return range(self.n)

    @property
    def dummy_ids(self) -> range:
        return range(self.n, self.n + self.l)

    @property
    def all_ids(self) -> range:
        """Real items extended by the l dummy ids."""
        return range(self.n + self.l)

    def oracles(self) -> list[Oracle]:
        """Fresh counting oracles over this instance's extended ground set."""
        return build_oracles(self.functions, self.n, self.l)


def parse_instance(text: bytes | str) -> Instance:
    """Parse and validate the JSON instance form, rejecting unknown fields."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValidationError(f"instance is not UTF-8: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"instance is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValidationError("instance must be a JSON object")
    unknown = sorted(set(obj) - set(_INSTANCE_FIELDS))
    if unknown:
        raise ValidationError(f"unknown instance field(s): {', '.join(unknown)}")
    missing = sorted(set(_INSTANCE_FIELDS) - set(obj))
    if missing:
        raise ValidationError(f"instance is missing field(s): {', '.join(missing)}")
    if not isinstance(obj["functions"], list):
        raise ValidationError("functions must be a JSON array")
    descriptors = tuple(descriptor_from_json(d) for d in obj["functions"])
    return Instance(obj["n"], obj["k"], obj["l"], descriptors)


def serialize_instance(instance: Instance) -> str:
    """Canonical single-line JSON; equal instances serialize to equal bytes."""
    payload = {
        "n": instance.n,
        "k": instance.k,
        "l": instance.l,
        "functions": [f.to_json() for f in instance.functions],
    }
    return json.dumps(payload)


def _generate_descriptor(kind: str, n: int, rng: random.Random) -> FunctionDescriptor:
    from .functions import Coverage, FacilityLocation, GraphCut

    if kind == "coverage":
        universe = 2 * n
        covers = tuple(
            frozenset(u for u in range(universe) if rng.random() < 0.3)
            for _ in range(n)
        )
        return Coverage((1.0,) * universe, covers)
    if kind == "facility_location":
        return FacilityLocation(
            tuple(tuple(rng.random() for _ in range(n)) for _ in range(n))
        )
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.4:
                edges.append((u, v, rng.random()))
    return GraphCut(tuple(edges))


def generate_instance(
    kind: str, n: int, m: int, k: int, l: int, seed: int
) -> Instance:
    """Deterministic synthetic instance.

    coverage: each item covers each of 2n unit-weight universe elements with
    probability 0.3.  facility_location: an n-client similarity matrix uniform
    in [0, 1).  graph_cut: each of the C(n, 2) edges appears with probability
    0.4 and uniform weight.  mixed: functions cycle through those three kinds.
    """
    if kind not in GENERATOR_KINDS:
        raise ValidationError(f"unknown generator kind {kind!r}")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValidationError("m must be ≥ 1")
    rng = random.Random(seed)
    if kind == "mixed":
        cycle = ("coverage", "facility_location", "graph_cut")
        kinds = [cycle[i % 3] for i in range(m)]
    else:
        kinds = [kind] * m
    functions = tuple(_generate_descriptor(c, n, rng) for c in kinds)
    return Instance(n, k, l, functions)
