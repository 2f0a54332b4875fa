"""POVM observables on finite-dimensional systems.

Covers the trace rule (outcome statistics of an observable at a state), the
product joint of commuting projective observables, marginals of joints, the
marginal-consistency check, and the standard two-qubit spin pair used by the
built-in examples.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    NonCommuting,
    NonHermitianInput,
    NotAProductSpace,
    NotProjective,
    ValidationError,
)
from .hilbert import (
    DensityOperator,
    _as_complex_matrix,
    _hermitian_deviation,
    _max_abs,
    _readonly,
    expectation,
    hermitian_eigensystem,
    hermitian_eigenvalues,
)
from .measure import DiscreteMeasure, OutcomeSpace, ProductSpace, _normalize_outcome
from .tolerance import DEGENERACY_TOL, validation_eps

__all__ = [
    "Povm",
    "outcome_measure",
    "joint_from_commuting",
    "marginal_observable",
    "check_joint",
    "spin_z_pair",
    "SPIN_LABELS",
]

SPIN_LABELS = ("+1/2", "-1/2")


class Povm:
    """Positive-operator-valued measure with finitely many outcomes.

    Parameters
    ----------
    space : OutcomeSpace or ProductSpace
        Outcome labels; joints live on product spaces.
    effects : mapping
        One positive matrix per outcome. The effects must share a dimension
        and sum to the identity within the validation tolerance.

    Whether the measure is projective (a PVM) is detected numerically from
    the effects, never declared: every effect must be idempotent and distinct
    effects must annihilate each other, all within tolerance.
    """

    __slots__ = ("_space", "_effects", "_dim", "_is_projective")

    def __init__(self, space, effects: Mapping):
        eps = validation_eps()
        outcomes = tuple(space.outcomes)
        table = {}
        for outcome, matrix in dict(effects).items():
            key = _normalize_outcome(space, outcome)
            table[key] = _as_complex_matrix(matrix, name=f"effect at {outcome!r}")
        missing = [o for o in outcomes if o not in table]
        extra = [o for o in table if o not in outcomes]
        if missing or extra:
            raise ValidationError(
                f"effects must cover the space exactly (missing {missing!r}, extra {extra!r})"
            )
        dim = table[outcomes[0]].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for outcome in outcomes:
            effect = table[outcome]
            if effect.shape[0] != dim:
                raise DimensionMismatch(
                    f"effect at {outcome!r} has dimension {effect.shape[0]}, expected {dim}"
                )
            deviation = _hermitian_deviation(effect)
            if deviation > eps:
                raise ValidationError(
                    f"effect at {outcome!r} is not Hermitian (max deviation {deviation:.3e})"
                )
            smallest = float(np.min(hermitian_eigenvalues(effect)))
            if smallest < -eps:
                raise ValidationError(
                    f"effect at {outcome!r} is not positive semidefinite "
                    f"(eigenvalue {smallest:.3e})"
                )
            total += effect
        completeness = _max_abs(total - np.eye(dim))
        if completeness > eps:
            raise ValidationError(
                f"effects do not sum to the identity (max deviation {completeness:.3e})"
            )
        self._space = space
        self._effects = {o: _readonly(table[o]) for o in outcomes}
        self._dim = dim
        self._is_projective = self._detect_projective(eps)

    def _detect_projective(self, eps: float) -> bool:
        effects = list(self._effects.values())
        for effect in effects:
            if _max_abs(effect @ effect - effect) > eps:
                return False
        for i, left in enumerate(effects):
            for right in effects[i + 1 :]:
                if _max_abs(left @ right) > eps:
                    return False
        return True

    @classmethod
    def from_operator(cls, operator, labels=None) -> "Povm":
        """Projective observable of a self-adjoint operator.

        Eigenvalues closer than the degeneracy tolerance are merged into one
        outcome whose effect is the projector onto the combined eigenspace.
        Outcomes are ordered by descending eigenvalue; `labels` may rename
        them (one label per distinct eigenvalue) and default to the formatted
        eigenvalues.
        """
        matrix = _as_complex_matrix(operator, name="operator")
        deviation = _hermitian_deviation(matrix)
        if deviation > validation_eps():
            raise NonHermitianInput(
                f"operator is not Hermitian (max deviation {deviation:.3e})"
            )
        values, vectors = hermitian_eigensystem(matrix)
        groups: list[tuple[float, list[int]]] = []
        for index, value in enumerate(values):
            if groups and abs(groups[-1][0] - value) <= DEGENERACY_TOL:
                groups[-1][1].append(index)
            else:
                groups.append((float(value), [index]))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(groups):
                raise ValidationError(
                    f"{len(labels)} labels given for {len(groups)} distinct eigenvalues"
                )
        else:
            raw = [f"{value:.9g}" for value, _ in groups]
            labels = tuple(
                name if raw.count(name) == 1 else f"{name}#{i}"
                for i, name in enumerate(raw)
            )
        effects = {}
        for label, (_, indices) in zip(labels, groups):
            block = vectors[:, indices]
            effects[label] = block @ block.conj().T
        return cls(OutcomeSpace(labels), effects)

    @property
    def space(self):
        return self._space

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_projective(self) -> bool:
        return self._is_projective

    @property
    def effects(self) -> Mapping:
        return dict(self._effects)

    def effect(self, outcome) -> np.ndarray:
        return self._effects[_normalize_outcome(self._space, outcome)]

    def __repr__(self) -> str:
        kind = "PVM" if self._is_projective else "POVM"
        return f"Povm({kind}, dim={self._dim}, outcomes={len(self._effects)})"


def outcome_measure(observable: Povm, state: DensityOperator) -> DiscreteMeasure:
    """Outcome statistics of `observable` at `state` via the trace rule.

    The weight of each outcome is Tr(E(outcome) D); the result is a
    probability measure on the observable's outcome space. Affine in the
    state.
    """
    if observable.dim != state.dim:
        raise DimensionMismatch(
            f"observable dimension {observable.dim} does not match state dimension {state.dim}"
        )
    weights = {
        outcome: expectation(observable.effect(outcome), state)
        for outcome in observable.space.outcomes
    }
    return DiscreteMeasure(observable.space, weights)


def joint_from_commuting(a1: Povm, a2: Povm) -> Povm:
    """Product joint of two commuting projective observables.

    The joint effect at (x1, x2) is E1(x1) E2(x2). Both inputs must be PVMs
    on simple outcome spaces and every pair of effects must commute; a joint
    observable is not guaranteed to exist otherwise.
    """
    for name, a in (("first", a1), ("second", a2)):
        if isinstance(a.space, ProductSpace):
            raise ValidationError(f"{name} observable must live on a simple outcome space")
        if not a.is_projective:
            raise NotProjective(f"{name} observable is not projective")
    if a1.dim != a2.dim:
        raise DimensionMismatch(
            f"observable dimensions differ: {a1.dim} vs {a2.dim}"
        )
    eps = validation_eps()
    for l1 in a1.space.labels:
        for l2 in a2.space.labels:
            left = a1.effect(l1)
            right = a2.effect(l2)
            gap = _max_abs(left @ right - right @ left)
            if gap > eps:
                raise NonCommuting(
                    f"effects at {l1!r} and {l2!r} do not commute (max deviation {gap:.3e})"
                )
    space = ProductSpace(a1.space, a2.space)
    effects = {
        (l1, l2): a1.effect(l1) @ a2.effect(l2)
        for l1 in a1.space.labels
        for l2 in a2.space.labels
    }
    return Povm(space, effects)


def marginal_observable(joint: Povm, side) -> Povm:
    """Marginal of a joint observable onto one factor of its product space."""
    if not isinstance(joint.space, ProductSpace):
        raise NotAProductSpace("marginal requires a joint on a product space")
    if side not in ("left", "right"):
        raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
    index = 0 if side == "left" else 1
    target = joint.space.left if side == "left" else joint.space.right
    dim = joint.dim
    effects = {}
    for label in target.labels:
        total = np.zeros((dim, dim), dtype=complex)
        for point in joint.space.points:
            if point[index] == label:
                total += joint.effect(point)
        effects[label] = total
    return Povm(target, effects)


def check_joint(joint: Povm, a1: Povm, a2: Povm) -> bool:
    """Whether `joint` has `a1` and `a2` as its marginals.

    Returns False (never raises) on space or dimension mismatch, or when a
    marginal effect differs from the corresponding observable's effect beyond
    tolerance.
    """
    if not isinstance(joint.space, ProductSpace):
        return False
    if joint.space.left != a1.space or joint.space.right != a2.space:
        return False
    if joint.dim != a1.dim or joint.dim != a2.dim:
        return False
    eps = validation_eps()
    for side, observable in (("left", a1), ("right", a2)):
        reduced = marginal_observable(joint, side)
        for label in observable.space.labels:
            if _max_abs(reduced.effect(label) - observable.effect(label)) > eps:
                return False
    return True


def spin_z_pair() -> tuple[Povm, Povm, Povm]:
    """The two-qubit spin observables along z and their product joint.

    Returns (a1, a2, joint): a1 measures the first qubit, a2 the second,
    both with outcome labels "+1/2" and "-1/2"; the joint is the product PVM
    on the four outcome pairs, row-major.
    """
    up = np.diag([1.0, 0.0]).astype(complex)
    down = np.diag([0.0, 1.0]).astype(complex)
    eye = np.eye(2, dtype=complex)
    space = OutcomeSpace(SPIN_LABELS)
    projectors = {"+1/2": up, "-1/2": down}
    a1 = Povm(space, {label: np.kron(proj, eye) for label, proj in projectors.items()})
    a2 = Povm(space, {label: np.kron(eye, proj) for label, proj in projectors.items()})
    joint = Povm(
        ProductSpace(space, space),
        {
            (l1, l2): np.kron(projectors[l1], projectors[l2])
            for l1 in SPIN_LABELS
            for l2 in SPIN_LABELS
        },
    )
    return a1, a2, joint
