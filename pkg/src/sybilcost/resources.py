"""Structural model of security-weighting resources.

A resource is described by the structural properties that govern how an
allocation of it can be divided, reused across decision windows, and moved
between identities.  Those properties, rather than the protocol rules layered
on top, determine how cheaply influence backed by the resource can be
concentrated.  This module provides the property flags, the classification
into the two extremal scaling classes plus the intermediate and unclassified
buckets, a built-in taxonomy of concrete resource types, and validation of
resource-to-influence mappings.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Mapping

__all__ = [
    "ChannelSpec",
    "InfluenceFunction",
    "InfluenceValidation",
    "InfluenceViolation",
    "ResourceClass",
    "ResourceClassification",
    "ResourceSpec",
    "TAXONOMY",
    "VALIDATION_GRID",
    "channel_resource",
    "classify",
    "is_parallelizable",
    "is_throughput_bounded",
    "load_specs",
    "preset",
    "scaling_label",
    "spec_from_dict",
    "spec_to_dict",
    "taxonomy_presets",
    "taxonomy_rows",
    "validate_influence_function",
]


class ResourceClass(Enum):
    """Scaling class a resource falls into."""

    PARALLELIZABLE = "Parallelizable"
    THROUGHPUT_BOUNDED = "ThroughputBounded"
    INTERMEDIATE = "Intermediate"
    OTHER = "Other"


@dataclass(frozen=True)
class ResourceSpec:
    """Structural description of a security-weighting resource.

    ``temporally_reusable`` is ``None`` exactly when ``k`` bounds reuse to a
    finite number of consecutive windows, and ``identity_transferable`` is
    ``None`` exactly when ``alpha`` limits transfer to a fraction of the
    allocation.  A spec carries the boolean or its override, never both.
    ``tau`` (the per-channel rate limit) is present exactly when the resource
    is flagged throughput-bounded, and a throughput-bounded resource is
    necessarily window-local and non-transferable.
    """

    name: str
    divisible: bool
    additive_influence: bool
    temporally_reusable: bool | None
    identity_transferable: bool | None
    throughput_bounded: bool = False
    r_min: float = 1.0
    tau: float | None = None
    alpha: float | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.r_min <= 0:
            raise ValueError(f"r_min must be positive, got {self.r_min}")
        if (self.tau is not None) != self.throughput_bounded:
            raise ValueError("tau must be present exactly when throughput_bounded is set")
        if self.tau is not None:
            if self.tau <= 0:
                raise ValueError(f"tau must be positive, got {self.tau}")
            if self.r_min > self.tau:
                raise ValueError(
                    f"activation threshold r_min={self.r_min} exceeds rate limit tau={self.tau}"
                )
        if (self.alpha is None) == (self.identity_transferable is None):
            raise ValueError("set exactly one of identity_transferable or alpha")
        if self.alpha is not None and not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if (self.k is None) == (self.temporally_reusable is None):
            raise ValueError("set exactly one of temporally_reusable or k")
        if self.k is not None and self.k < 1:
            raise ValueError(f"k must be a positive window count, got {self.k}")
        if self.throughput_bounded and (
            self.temporally_reusable is not False or self.identity_transferable is not False
        ):
            raise ValueError("throughput-bounded resources are window-local and non-transferable")


@dataclass(frozen=True)
class ResourceClassification:
    """Outcome of classifying a spec, with property-level reasons."""

    resource_class: ResourceClass
    reasons: tuple[str, ...]


@dataclass(frozen=True)
class ChannelSpec:
    """A per-actor participation channel with a hard per-window rate limit."""

    actor_id: str
    tau: float

    def __post_init__(self) -> None:
        if not self.actor_id:
            raise ValueError("actor_id must be nonempty")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")


@dataclass(frozen=True)
class InfluenceFunction:
    """Linear resource-to-influence mapping ``f(r) = coefficient * r``.

    Only the linear family is admitted: it is the additive case, and the cost
    results below are stated for it.  Sublinear or superlinear mappings fail
    ``validate_influence_function`` and are rejected by construction here.
    """

    r_min: float
    coefficient: float = 1.0

    def __post_init__(self) -> None:
        if self.r_min <= 0:
            raise ValueError(f"r_min must be positive, got {self.r_min}")
        if self.coefficient <= 0:
            raise ValueError(f"coefficient must be positive, got {self.coefficient}")

    def __call__(self, allocation: float) -> float:
        return self.coefficient * allocation

    @property
    def w_unit(self) -> float:
        """Influence of one identity operating exactly at the activation threshold."""
        return self.coefficient * self.r_min


def is_parallelizable(spec: ResourceSpec) -> bool:
    """True when all four concentration-enabling properties hold outright."""
    return (
        spec.divisible
        and spec.additive_influence
        and spec.temporally_reusable is True
        and spec.identity_transferable is True
    )


def is_throughput_bounded(spec: ResourceSpec) -> bool:
    """True when the resource is rate-limited per channel (window-local, non-transferable)."""
    return spec.throughput_bounded and spec.tau is not None


def classify(spec: ResourceSpec) -> ResourceClassification:
    """Assign a spec to its scaling class with property-level reasons."""
    if is_parallelizable(spec):
        return ResourceClassification(
            ResourceClass.PARALLELIZABLE,
            (
                "divisible",
                "additive influence",
                "temporally reusable",
                "identity transferable",
            ),
        )
    if is_throughput_bounded(spec):
        return ResourceClassification(
            ResourceClass.THROUGHPUT_BOUNDED,
            (
                f"per-channel rate limit tau={spec.tau}",
                "window-local (no carry-over between windows)",
                "non-transferable between identities",
            ),
        )
    if spec.alpha is not None or spec.k is not None:
        reasons = []
        if spec.alpha is not None:
            reasons.append(f"partial transferability alpha={spec.alpha}")
        if spec.k is not None:
            reasons.append(f"bounded temporal reuse k={spec.k}")
        return ResourceClassification(ResourceClass.INTERMEDIATE, tuple(reasons))
    reasons = []
    if not spec.divisible:
        reasons.append("not divisible")
    if not spec.additive_influence:
        reasons.append("influence not additive across identities")
    if spec.temporally_reusable is False:
        reasons.append("not temporally reusable")
    if spec.identity_transferable is False:
        reasons.append("not transferable between identities")
    reasons.append("no per-channel rate limit")
    return ResourceClassification(ResourceClass.OTHER, tuple(reasons))


def channel_resource(channel: ChannelSpec, r_min: float) -> ResourceSpec:
    """Wrap a participation channel as a throughput-bounded resource spec."""
    return ResourceSpec(
        name=f"channel:{channel.actor_id}",
        divisible=False,
        additive_influence=False,
        temporally_reusable=False,
        identity_transferable=False,
        throughput_bounded=True,
        r_min=r_min,
        tau=channel.tau,
    )


def _bounded_preset(name: str) -> ResourceSpec:
    return ResourceSpec(
        name=name,
        divisible=False,
        additive_influence=False,
        temporally_reusable=False,
        identity_transferable=False,
        throughput_bounded=True,
        r_min=1.0,
        tau=1.0,
    )


# Built-in taxonomy of resource types commonly used for security weighting.
# Presets use a normalized activation threshold (and rate limit) of 1.0.
TAXONOMY: tuple[ResourceSpec, ...] = (
    # Mining hardware: capital stock, arbitrarily divisible, resellable.
    ResourceSpec(
        name="pow-hardware",
        divisible=True,
        additive_influence=True,
        temporally_reusable=True,
        identity_transferable=True,
    ),
    # Energy spent on mining: divisible and additive but consumed per window.
    ResourceSpec(
        name="pow-energy",
        divisible=True,
        additive_influence=True,
        temporally_reusable=False,
        identity_transferable=True,
    ),
    # Bonded stake: divisible capital, reusable every window, delegable.
    ResourceSpec(
        name="pos-stake",
        divisible=True,
        additive_influence=True,
        temporally_reusable=True,
        identity_transferable=True,
    ),
    # Standing in a social graph: neither divisible nor additive, and edges
    # do not move between identities in any clean sense.
    ResourceSpec(
        name="social-graph",
        divisible=False,
        additive_influence=False,
        temporally_reusable=False,
        identity_transferable=False,
    ),
    # One physical device per identity, rate-limited per window.
    _bounded_preset("device-bound"),
    # One human's attention per window.
    _bounded_preset("human-participation"),
    # Protocol-level per-channel rate limiting.
    _bounded_preset("rate-limited"),
)

_PRESETS: dict[str, ResourceSpec] = {spec.name: spec for spec in TAXONOMY}


def preset(name: str) -> ResourceSpec:
    """Look up a built-in taxonomy preset by name."""
    try:
        return _PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(_PRESETS))
        raise ValueError(f"unknown preset {name!r}; known presets: {known}") from None


def taxonomy_presets() -> list[ResourceSpec]:
    """All built-in presets, in taxonomy order."""
    return list(TAXONOMY)


def scaling_label(spec: ResourceSpec) -> str:
    """Asymptotic adversary-cost scaling implied by the spec's class."""
    cls = classify(spec).resource_class
    if cls is ResourceClass.PARALLELIZABLE:
        return "o(sT)"
    if cls is ResourceClass.THROUGHPUT_BOUNDED:
        return "Omega(sT)"
    if cls is ResourceClass.INTERMEDIATE:
        if spec.alpha is not None:
            return f"Omega((1-alpha)*sT), alpha={spec.alpha}"
        return f"Omega(sT/k), k={spec.k}"
    if spec.temporally_reusable is False and spec.divisible and spec.additive_influence:
        # Flow resources renew every window even though stock never accrues.
        return "linear in T"
    return "no closed form"


def taxonomy_rows() -> tuple[dict[str, object], ...]:
    """Taxonomy presets as flat export rows (spec fields plus class and scaling)."""
    rows = []
    for spec in TAXONOMY:
        row: dict[str, object] = spec_to_dict(spec)
        row["resource_class"] = classify(spec).resource_class.value
        row["scaling"] = scaling_label(spec)
        rows.append(row)
    return tuple(rows)


# ---------------------------------------------------------------------------
# Influence-function validation
# ---------------------------------------------------------------------------

VALIDATION_GRID: tuple[float, ...] = tuple(i * 0.25 for i in range(33))  # 0.0 .. 8.0
_REL_TOL = 1e-9


@dataclass(frozen=True)
class InfluenceViolation:
    check: str
    at: tuple[float, ...]
    detail: str


@dataclass(frozen=True)
class InfluenceValidation:
    passed: bool
    violations: tuple[InfluenceViolation, ...]


def _tol(reference: float) -> float:
    return _REL_TOL * max(1.0, abs(reference))


def validate_influence_function(
    f: Callable[[float], float], grid: tuple[float, ...] = VALIDATION_GRID
) -> InfluenceValidation:
    """Check a candidate mapping for the three admissibility properties.

    The mapping must vanish at zero, be monotone nondecreasing, and be
    additive (``f(a) + f(b) == f(a + b)``) on the sample grid.  The first
    violating grid point per property is reported.
    """
    violations: list[InfluenceViolation] = []

    value_at_zero = f(0.0)
    if abs(value_at_zero) > _tol(0.0):
        violations.append(
            InfluenceViolation("zero-at-origin", (0.0,), f"f(0) = {value_at_zero!r}, expected 0")
        )

    previous_point, previous = grid[0], f(grid[0])
    for point in grid[1:]:
        current = f(point)
        if current < previous - _tol(previous):
            violations.append(
                InfluenceViolation(
                    "monotone",
                    (previous_point, point),
                    f"f({previous_point}) = {previous!r} but f({point}) = {current!r}",
                )
            )
            break
        previous_point, previous = point, current

    done = False
    for i, a in enumerate(grid):
        if done:
            break
        for b in grid[i:]:
            left = f(a) + f(b)
            right = f(a + b)
            if abs(left - right) > _tol(right):
                violations.append(
                    InfluenceViolation(
                        "additive",
                        (a, b),
                        f"f({a}) + f({b}) = {left!r} but f({a + b}) = {right!r}",
                    )
                )
                done = True
                break

    return InfluenceValidation(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# JSON import/export
# ---------------------------------------------------------------------------

_FIELDS = (
    "name",
    "divisible",
    "additive_influence",
    "temporally_reusable",
    "identity_transferable",
    "throughput_bounded",
    "r_min",
    "tau",
    "alpha",
    "k",
)


def spec_to_dict(spec: ResourceSpec) -> dict[str, object]:
    """Spec as a JSON-ready dict whose keys mirror the field names."""
    return asdict(spec)


def spec_from_dict(data: Mapping[str, object]) -> ResourceSpec:
    """Build a spec from a dict with the same keys as the dataclass fields."""
    unknown = set(data) - set(_FIELDS)
    if unknown:
        raise ValueError(f"unknown resource fields: {sorted(unknown)}")
    kwargs = {key: data[key] for key in _FIELDS if key in data}
    kwargs.setdefault("temporally_reusable", None)
    kwargs.setdefault("identity_transferable", None)
    try:
        return ResourceSpec(**kwargs)
    except TypeError as exc:
        raise ValueError(f"incomplete resource spec: {exc}") from exc


def load_specs(source: str | Path) -> tuple[ResourceSpec, ...]:
    """Load one spec or a list of specs from a JSON file."""
    data = json.loads(Path(source).read_text())
    if isinstance(data, Mapping):
        data = [data]
    if not isinstance(data, list):
        raise ValueError("spec file must hold an object or an array of objects")
    return tuple(spec_from_dict(entry) for entry in data)
