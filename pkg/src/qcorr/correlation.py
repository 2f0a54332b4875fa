"""Correlation decomposition for quantum observables.

The statistics of a joint observable J at a state D, compared against the
product of the single-observable statistics, give the total correlation
density rho_t. Relative to a convex decomposition of D into pure states, the
total splits multiplicatively: rho_t = rho_c * rho_e on the common support,
where rho_c measures the correlation carried by the mixing (the classical
part) and rho_e the remainder attributable to the components themselves
(probabilistic entanglement). Both factors, unlike rho_t, depend on the
chosen decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AbsoluteContinuityViolation, DimensionMismatch, JointMarginalMismatch
from .hilbert import ConvexDecomposition, DensityOperator, spectral_decompose
from .measure import (
    DensityFunction,
    DiscreteMeasure,
    density,
    density_product,
    mix,
    product,
)
from .observable import Povm, check_joint, outcome_measure

__all__ = [
    "ConvexDecomposition",
    "CorrelationReport",
    "classical_product_measure",
    "total_correlation",
    "classical_correlation",
    "entanglement",
    "correlation_report",
]


def classical_product_measure(
    a1: Povm, a2: Povm, decomposition: ConvexDecomposition
) -> DiscreteMeasure:
    """Mixture of per-component product statistics, sum(w_i A1(P_i) x A2(P_i)).

    This is the joint measure a classical mixing device would produce if each
    component state fed both observables independently; it carries exactly
    the correlation injected by the mixing weights.
    """
    target = decomposition.target
    if a1.dim != target.dim or a2.dim != target.dim:
        raise DimensionMismatch(
            f"observable dimensions ({a1.dim}, {a2.dim}) do not match state dimension {target.dim}"
        )
    parts = []
    for weight, state in decomposition.components:
        component = DensityOperator.from_pure(state)
        parts.append(
            (weight, product(outcome_measure(a1, component), outcome_measure(a2, component)))
        )
    return mix(parts)


def _require_joint(joint: Povm, a1: Povm, a2: Povm) -> None:
    if not check_joint(joint, a1, a2):
        raise JointMarginalMismatch(
            "joint observable's marginals do not reproduce the given pair"
        )


def total_correlation(
    joint: Povm, a1: Povm, a2: Povm, state: DensityOperator
) -> DensityFunction:
    """Density of the joint statistics against the product of the marginals.

    Constant 1 exactly when the joint statistics factorize. Depends only on
    the state, not on any decomposition of it.
    """
    _require_joint(joint, a1, a2)
    joint_measure = outcome_measure(joint, state)
    marginals = product(outcome_measure(a1, state), outcome_measure(a2, state))
    return density(joint_measure, marginals)


def classical_correlation(
    a1: Povm, a2: Povm, decomposition: ConvexDecomposition
) -> DensityFunction:
    """Density of the decomposition's classical product measure against the
    product of the state's marginal statistics."""
    state = decomposition.target
    numerator = classical_product_measure(a1, a2, decomposition)
    denominator = product(outcome_measure(a1, state), outcome_measure(a2, state))
    return density(numerator, denominator)


def entanglement(
    joint: Povm, a1: Povm, a2: Povm, decomposition: ConvexDecomposition
) -> DensityFunction:
    """Density of the joint statistics against the classical product measure.

    Constant 1 means every correlation in the joint statistics is accounted
    for by the mixing; deviations are correlation carried by the components.
    Raises AbsoluteContinuityViolation when the joint statistics put mass
    where the classical product measure has none.
    """
    _require_joint(joint, a1, a2)
    joint_measure = outcome_measure(joint, decomposition.target)
    return density(joint_measure, classical_product_measure(a1, a2, decomposition))


@dataclass
class CorrelationReport:
    """Engine output for one (joint, observables, decomposition) instance.

    rho_c and rho_e are None when their density does not exist; the matching
    error message records why. The residual is the largest deviation of
    rho_c * rho_e from rho_t on the common support, and is None whenever one
    of the factors is missing.
    """

    joint_measure: DiscreteMeasure
    marginal_1: DiscreteMeasure
    marginal_2: DiscreteMeasure
    product_measure: DiscreteMeasure
    classical_product: DiscreteMeasure
    rho_t: DensityFunction
    rho_c: DensityFunction | None
    rho_e: DensityFunction | None
    rho_c_error: str | None
    rho_e_error: str | None
    product_rule_residual: float | None
    decomposition_source: str
    decomposition_size: int


def correlation_report(
    joint: Povm,
    a1: Povm,
    a2: Povm,
    decomposition: ConvexDecomposition | DensityOperator,
) -> CorrelationReport:
    """Full correlation split for one decomposition.

    `decomposition` may be a bare density operator, in which case its
    spectral decomposition is used and the report is marked accordingly;
    that default is one convex decomposition among many, so the split it
    produces is not canonical.
    """
    if isinstance(decomposition, DensityOperator):
        decomposition = spectral_decompose(decomposition)
        source = "spectral"
    else:
        source = "explicit"
    _require_joint(joint, a1, a2)
    state = decomposition.target
    joint_measure = outcome_measure(joint, state)
    marginal_1 = outcome_measure(a1, state)
    marginal_2 = outcome_measure(a2, state)
    product_measure = product(marginal_1, marginal_2)
    classical_product = classical_product_measure(a1, a2, decomposition)

    rho_t = density(joint_measure, product_measure)
    rho_c = rho_e = None
    rho_c_error = rho_e_error = None
    try:
        rho_c = density(classical_product, product_measure)
    except AbsoluteContinuityViolation as exc:
        rho_c_error = str(exc)
    try:
        rho_e = density(joint_measure, classical_product)
    except AbsoluteContinuityViolation as exc:
        rho_e_error = str(exc)

    residual = None
    if rho_c is not None and rho_e is not None:
        residual = density_product(rho_c, rho_e).max_difference(rho_t)

    return CorrelationReport(
        joint_measure=joint_measure,
        marginal_1=marginal_1,
        marginal_2=marginal_2,
        product_measure=product_measure,
        classical_product=classical_product,
        rho_t=rho_t,
        rho_c=rho_c,
        rho_e=rho_e,
        rho_c_error=rho_c_error,
        rho_e_error=rho_e_error,
        product_rule_residual=residual,
        decomposition_source=source,
        decomposition_size=len(decomposition),
    )
