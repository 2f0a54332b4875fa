"""Discrete probability measures on labeled outcome spaces.

Provides the product, marginal, and mixture constructions, plus pointwise
density functions (likelihood ratios) between measures on the same space.
Product-space points are ordered row-major: the right factor varies fastest.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType
from typing import Literal, Union

import numpy as np

from .errors import (
    AbsoluteContinuityViolation,
    NotAProductSpace,
    SpaceMismatch,
    UnknownLabel,
    ValidationError,
    WeightSumInvalid,
)
from .tolerance import EPS, validation_eps

__all__ = [
    "OutcomeSpace",
    "ProductSpace",
    "DiscreteMeasure",
    "DensityFunction",
    "dirac",
    "product",
    "marginal",
    "mix",
    "density",
    "density_product",
]

Outcome = Union[str, tuple[str, str]]


@dataclass(frozen=True)
class OutcomeSpace:
    """Ordered finite set of distinct outcome labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValidationError("outcome space needs at least one label")
        if not all(isinstance(label, str) and label for label in labels):
            raise ValidationError("outcome labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValidationError(f"outcome labels must be distinct, got {labels!r}")

    @property
    def outcomes(self) -> tuple[str, ...]:
        return self.labels

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class ProductSpace:
    """Cartesian product of two outcome spaces; points ordered row-major."""

    left: OutcomeSpace
    right: OutcomeSpace

    def __post_init__(self):
        for name, factor in (("left", self.left), ("right", self.right)):
            if isinstance(factor, ProductSpace) or not isinstance(factor, OutcomeSpace):
                raise ValidationError(f"{name} factor must be a simple outcome space")

    @property
    def points(self) -> tuple[tuple[str, str], ...]:
        return tuple((l, r) for l in self.left.labels for r in self.right.labels)

    @property
    def outcomes(self) -> tuple[tuple[str, str], ...]:
        return self.points

    def __contains__(self, point) -> bool:
        return (
            isinstance(point, tuple)
            and len(point) == 2
            and point[0] in self.left.labels
            and point[1] in self.right.labels
        )

    def __len__(self) -> int:
        return len(self.left.labels) * len(self.right.labels)


Space = Union[OutcomeSpace, ProductSpace]


def _normalize_outcome(space: Space, outcome) -> Outcome:
    if isinstance(space, ProductSpace):
        if isinstance(outcome, (tuple, list)) and len(outcome) == 2:
            candidate = (outcome[0], outcome[1])
            if candidate in space:
                return candidate
        raise UnknownLabel(f"outcome {outcome!r} is not a point of the product space")
    if outcome in space:
        return outcome
    raise UnknownLabel(f"outcome {outcome!r} is not in the space {space.labels!r}")


class DiscreteMeasure:
    """Probability measure on a finite labeled space.

    Every outcome of the space gets an entry; outcomes missing from the input
    mapping count as zero. Weights may dip below zero only within the
    validation tolerance (rounding noise), and must sum to one.
    """

    __slots__ = ("_space", "_weights")

    def __init__(self, space: Space, weights: Mapping):
        eps = validation_eps()
        table = dict.fromkeys(space.outcomes, 0.0)
        for outcome, value in dict(weights).items():
            key = _normalize_outcome(space, outcome)
            value = float(value)
            if not math.isfinite(value):
                raise ValidationError(f"weight at {outcome!r} is not finite")
            if value < -eps:
                raise ValidationError(f"negative weight {value!r} at {outcome!r}")
            table[key] = value
        total = math.fsum(table.values())
        if abs(total - 1.0) > eps:
            raise ValidationError(f"weights sum to {total!r}, expected 1")
        self._space = space
        self._weights = table

    @property
    def space(self) -> Space:
        return self._space

    @property
    def weights(self) -> Mapping[Outcome, float]:
        return MappingProxyType(self._weights)

    def weight(self, outcome) -> float:
        return self._weights[_normalize_outcome(self._space, outcome)]

    def as_array(self) -> np.ndarray:
        """Weights aligned with the space's outcome order (row-major)."""
        return np.array([self._weights[o] for o in self._space.outcomes], dtype=float)

    def support(self, threshold: float = EPS) -> tuple[Outcome, ...]:
        return tuple(o for o in self._space.outcomes if self._weights[o] > threshold)

    def items(self):
        return self._weights.items()

    def __repr__(self) -> str:
        return f"DiscreteMeasure({len(self._weights)} outcomes)"


def dirac(space: Space, outcome) -> DiscreteMeasure:
    """Point mass at `outcome`."""
    key = _normalize_outcome(space, outcome)
    return DiscreteMeasure(space, {key: 1.0})


def product(nu1: DiscreteMeasure, nu2: DiscreteMeasure) -> DiscreteMeasure:
    """Product measure on the product space, row-major point order."""
    for nu in (nu1, nu2):
        if isinstance(nu.space, ProductSpace):
            raise ValidationError("product expects measures on simple outcome spaces")
    space = ProductSpace(nu1.space, nu2.space)
    weights = {
        (l, r): nu1.weight(l) * nu2.weight(r)
        for l in nu1.space.labels
        for r in nu2.space.labels
    }
    return DiscreteMeasure(space, weights)


def marginal(nu: DiscreteMeasure, side: Literal["left", "right"]) -> DiscreteMeasure:
    """Marginal of a product-space measure onto one factor."""
    if not isinstance(nu.space, ProductSpace):
        raise NotAProductSpace("marginal requires a measure on a product space")
    if side not in ("left", "right"):
        raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
    index = 0 if side == "left" else 1
    target = nu.space.left if side == "left" else nu.space.right
    sums = {label: [] for label in target.labels}
    for point, value in nu.items():
        sums[point[index]].append(value)
    return DiscreteMeasure(target, {label: math.fsum(vals) for label, vals in sums.items()})


def mix(components: Iterable[tuple[float, DiscreteMeasure]]) -> DiscreteMeasure:
    """Convex mixture sum(w_i nu_i) of measures on one common space."""
    comps = [(float(w), nu) for w, nu in components]
    if not comps:
        raise WeightSumInvalid("mixture needs at least one component")
    eps = validation_eps()
    for weight, _ in comps:
        if not math.isfinite(weight) or weight < -eps:
            raise WeightSumInvalid(f"mixture weight {weight!r} must be nonnegative")
    total = math.fsum(w for w, _ in comps)
    if abs(total - 1.0) > eps:
        raise WeightSumInvalid(f"mixture weights sum to {total!r}, expected 1")
    space = comps[0][1].space
    for _, nu in comps:
        if nu.space != space:
            raise SpaceMismatch("mixture components live on different spaces")
    weights = {
        outcome: math.fsum(w * nu.weight(outcome) for w, nu in comps)
        for outcome in space.outcomes
    }
    return DiscreteMeasure(space, weights)


class DensityFunction:
    """Pointwise quotient of two measures, defined on the denominator support.

    Values exist exactly on the support; everything else is genuinely
    undefined (reported as a dash in tables, null in JSON), not zero.
    """

    __slots__ = ("_space", "_values")

    def __init__(self, space: Space, values: Mapping):
        table = {}
        for outcome, value in dict(values).items():
            key = _normalize_outcome(space, outcome)
            value = float(value)
            if not math.isfinite(value) or value < 0.0:
                raise ValidationError(f"density value {value!r} at {outcome!r} is invalid")
            table[key] = value
        # iteration follows the space's outcome order
        self._space = space
        self._values = {o: table[o] for o in space.outcomes if o in table}

    @property
    def space(self) -> Space:
        return self._space

    @property
    def values(self) -> Mapping[Outcome, float]:
        return MappingProxyType(self._values)

    @property
    def support(self) -> frozenset:
        return frozenset(self._values)

    def value(self, outcome) -> float:
        key = _normalize_outcome(self._space, outcome)
        if key not in self._values:
            raise UnknownLabel(f"outcome {outcome!r} is outside the support")
        return self._values[key]

    def get(self, outcome) -> float | None:
        key = _normalize_outcome(self._space, outcome)
        return self._values.get(key)

    def deviation_from(self, constant: float) -> float:
        """Largest |value - constant| over the support; 0.0 if support is empty."""
        return max((abs(v - constant) for v in self._values.values()), default=0.0)

    def max_difference(self, other: "DensityFunction") -> float:
        """Largest pointwise gap to `other` over the shared support."""
        if self._space != other.space:
            raise SpaceMismatch("densities live on different spaces")
        common = self.support & other.support
        return max((abs(self._values[o] - other._values[o]) for o in common), default=0.0)

    def __repr__(self) -> str:
        return f"DensityFunction(support={len(self._values)}/{len(self._space.outcomes)})"


def density(num: DiscreteMeasure, den: DiscreteMeasure) -> DensityFunction:
    """Density of `num` with respect to `den` on `den`'s support.

    Raises AbsoluteContinuityViolation when `num` carries mass at a point
    where `den` vanishes; the density does not exist there and no partial
    answer is returned.
    """
    if num.space != den.space:
        raise SpaceMismatch("numerator and denominator live on different spaces")
    values = {}
    for outcome in num.space.outcomes:
        d = den.weight(outcome)
        n = num.weight(outcome)
        if d > EPS:
            values[outcome] = max(n, 0.0) / d
        elif n > EPS:
            raise AbsoluteContinuityViolation(
                f"numerator has mass {n!r} at {outcome!r} where the denominator vanishes"
            )
    return DensityFunction(num.space, values)


def density_product(a: DensityFunction, b: DensityFunction) -> DensityFunction:
    """Pointwise product of two densities on the intersection of supports."""
    if a.space != b.space:
        raise SpaceMismatch("densities live on different spaces")
    common = a.support & b.support
    return DensityFunction(a.space, {o: a.values[o] * b.values[o] for o in common})
