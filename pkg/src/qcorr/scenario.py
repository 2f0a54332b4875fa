"""Scenario files: a versioned JSON schema plus the runner.

Schema "qcorr/1"
----------------
Common fields: ``schema`` (must be ``"qcorr/1"``), ``name``, ``mode``
(``"quantum"`` or ``"classical"``). Complex scalars are ``[re, im]`` pairs
(bare reals are accepted on input); matrices are row-major lists of rows.
Wherever values are keyed by outcomes, the file stores an array aligned with
the declared label order, row-major for product spaces.

Quantum mode::

    {
      "schema": "qcorr/1", "name": "...", "mode": "quantum",
      "dim": 4,
      "state": [[...], ...],                       # dim x dim density matrix
      "observables": [
        {"labels": [...], "effects": [M, ...]},    # one matrix per label
        {"labels": [...], "operator": M}           # or a self-adjoint operator
      ],
      "joint": "auto-commuting",                   # or {"effects": [M, ...]} row-major
      "decompositions": "spectral"                 # or {name: [{"weight": w, "vector": [...]}]}
    }

Classical mode::

    {
      "schema": "qcorr/1", "name": "...", "mode": "classical",
      "phase_space": ["p1", ...],
      "state": [...],                              # one weight per phase point
      "observables": [
        {"labels": [...], "kernel": [[...], ...]}  # one row per phase point
      ],
      "joint": "classical-product"                 # or {"kernel": [[...], ...]} row-major rows
    }

The serializer emits the normalized form (complex pairs everywhere, effects
form for observables), so load -> serialize -> load is stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .classical_frame import (
    ClassicalJoint,
    ClassicalObservable,
    PhaseSpace,
    apply,
    classical_joint,
    is_deterministic,
    is_marginally_consistent,
)
from .correlation import correlation_report
from .errors import AbsoluteContinuityViolation, ParseError, ValidationError
from .hilbert import ConvexDecomposition, DensityOperator, PureState
from .measure import (
    DiscreteMeasure,
    OutcomeSpace,
    ProductSpace,
    density,
    density_product,
    product,
)
from .observable import Povm, joint_from_commuting
from .report import DecompositionBlock, ReportDocument
from .tolerance import EPS

__all__ = [
    "SCHEMA",
    "QuantumScenario",
    "ClassicalScenario",
    "load_scenario",
    "loads_scenario",
    "scenario_from_jsonable",
    "scenario_to_jsonable",
    "run_scenario",
]

SCHEMA = "qcorr/1"


@dataclass
class QuantumScenario:
    name: str
    state: DensityOperator
    observable_1: Povm
    observable_2: Povm
    joint: Povm | None  # None: build the commuting product joint at run time
    decompositions: dict[str, ConvexDecomposition] = field(default_factory=dict)
    spectral: bool = False

    mode = "quantum"


@dataclass
class ClassicalScenario:
    name: str
    phase_space: PhaseSpace
    state: DiscreteMeasure
    observable_1: ClassicalObservable
    observable_2: ClassicalObservable
    joint: ClassicalJoint | None  # None: canonical product joint

    mode = "classical"


Scenario = QuantumScenario | ClassicalScenario


# ---------------------------------------------------------------------------
# parsing helpers; every failure names the offending field path


def _fail(path: str, message: str):
    raise ValidationError(f"{path}: {message}")


def _expect_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_list(value, path: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        _fail(path, f"expected an array, got {type(value).__name__}")
    if length is not None and len(value) != length:
        _fail(path, f"expected {length} entries, got {len(value)}")
    return value


def _string(value, path: str) -> str:
    if not isinstance(value, str) or not value:
        _fail(path, "expected a non-empty string")
    return value


def _real(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return float(value)


def _complex_scalar(value, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(_real(value[0], f"{path}[0]"), _real(value[1], f"{path}[1]"))
    _fail(path, f"expected a number or [re, im] pair, got {value!r}")


def _vector(value, path: str, dim: int) -> np.ndarray:
    entries = _expect_list(value, path, length=dim)
    return np.array(
        [_complex_scalar(entry, f"{path}[{i}]") for i, entry in enumerate(entries)],
        dtype=complex,
    )


def _matrix(value, path: str, dim: int) -> np.ndarray:
    rows = _expect_list(value, path, length=dim)
    return np.stack([_vector(row, f"{path}[{i}]", dim) for i, row in enumerate(rows)])


def _labels(value, path: str) -> tuple[str, ...]:
    entries = _expect_list(value, path)
    return tuple(_string(entry, f"{path}[{i}]") for i, entry in enumerate(entries))


def _wrap(path: str, builder):
    try:
        return builder()
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# loading


def load_scenario(path) -> Scenario:
    """Load and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_scenario(text, source=str(path))


def loads_scenario(text: str, source: str = "<string>") -> Scenario:
    """Parse scenario JSON from a string."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return scenario_from_jsonable(data)


def scenario_from_jsonable(data) -> Scenario:
    """Build a validated scenario from already-parsed JSON data."""
    root = _expect_mapping(data, "scenario")
    schema = root.get("schema")
    if schema != SCHEMA:
        _fail("schema", f"expected {SCHEMA!r}, got {schema!r}")
    name = _string(root.get("name"), "name")
    mode = root.get("mode")
    if mode == "quantum":
        return _quantum_from_jsonable(root, name)
    if mode == "classical":
        return _classical_from_jsonable(root, name)
    _fail("mode", f"expected 'quantum' or 'classical', got {mode!r}")


_QUANTUM_KEYS = {"schema", "name", "mode", "dim", "state", "observables", "joint", "decompositions"}
_CLASSICAL_KEYS = {"schema", "name", "mode", "phase_space", "state", "observables", "joint"}


def _check_keys(root: dict, allowed: set[str]):
    unknown = sorted(set(root) - allowed)
    if unknown:
        _fail(unknown[0], "unknown field")


def _quantum_from_jsonable(root: dict, name: str) -> QuantumScenario:
    _check_keys(root, _QUANTUM_KEYS)
    dim = root.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 2:
        _fail("dim", f"expected an integer >= 2, got {dim!r}")
    state_matrix = _matrix(root.get("state"), "state", dim)
    state = _wrap("state", lambda: DensityOperator(state_matrix))

    observables = _expect_list(root.get("observables"), "observables", length=2)
    povms = [
        _observable_from_jsonable(entry, f"observables[{i}]", dim)
        for i, entry in enumerate(observables)
    ]

    joint_value = root.get("joint", "auto-commuting")
    if joint_value == "auto-commuting":
        joint = None
    else:
        joint = _joint_from_jsonable(joint_value, "joint", povms[0], povms[1], dim)

    decompositions: dict[str, ConvexDecomposition] = {}
    spectral = False
    dec_value = root.get("decompositions", "spectral")
    if dec_value == "spectral":
        spectral = True
    else:
        mapping = _expect_mapping(dec_value, "decompositions")
        if not mapping:
            _fail("decompositions", "expected 'spectral' or at least one named decomposition")
        for dec_name, entries in mapping.items():
            path = f"decompositions[{dec_name!r}]"
            components = []
            for i, entry in enumerate(_expect_list(entries, path)):
                item = _expect_mapping(entry, f"{path}[{i}]")
                weight = _real(item.get("weight"), f"{path}[{i}].weight")
                vector = _vector(item.get("vector"), f"{path}[{i}].vector", dim)
                pure = _wrap(f"{path}[{i}].vector", lambda v=vector: PureState(v))
                components.append((weight, pure))
            decompositions[dec_name] = _wrap(
                path, lambda c=components: ConvexDecomposition(c, state)
            )
    return QuantumScenario(
        name=name,
        state=state,
        observable_1=povms[0],
        observable_2=povms[1],
        joint=joint,
        decompositions=decompositions,
        spectral=spectral,
    )


def _observable_from_jsonable(entry, path: str, dim: int) -> Povm:
    mapping = _expect_mapping(entry, path)
    labels = _labels(mapping.get("labels"), f"{path}.labels")
    has_effects = "effects" in mapping
    has_operator = "operator" in mapping
    if has_effects == has_operator:
        _fail(path, "expected exactly one of 'effects' or 'operator'")
    if has_operator:
        operator = _matrix(mapping["operator"], f"{path}.operator", dim)
        return _wrap(path, lambda: Povm.from_operator(operator, labels=labels))
    matrices = _expect_list(mapping["effects"], f"{path}.effects", length=len(labels))
    effects = {
        label: _matrix(matrix, f"{path}.effects[{i}]", dim)
        for i, (label, matrix) in enumerate(zip(labels, matrices))
    }
    return _wrap(path, lambda: Povm(OutcomeSpace(labels), effects))


def _joint_from_jsonable(value, path: str, a1: Povm, a2: Povm, dim: int) -> Povm:
    mapping = _expect_mapping(value, path)
    if set(mapping) != {"effects"}:
        _fail(path, "expected 'auto-commuting' or an object with an 'effects' array")
    space = ProductSpace(a1.space, a2.space)
    matrices = _expect_list(mapping["effects"], f"{path}.effects", length=len(space.points))
    effects = {
        point: _matrix(matrix, f"{path}.effects[{i}]", dim)
        for i, (point, matrix) in enumerate(zip(space.points, matrices))
    }
    return _wrap(path, lambda: Povm(space, effects))


def _classical_from_jsonable(root: dict, name: str) -> ClassicalScenario:
    _check_keys(root, _CLASSICAL_KEYS)
    phase = _wrap("phase_space", lambda: PhaseSpace(_labels(root.get("phase_space"), "phase_space")))
    state_values = _expect_list(root.get("state"), "state", length=len(phase))
    state = _wrap(
        "state",
        lambda: DiscreteMeasure(
            phase,
            {
                point: _real(value, f"state[{i}]")
                for i, (point, value) in enumerate(zip(phase.labels, state_values))
            },
        ),
    )
    observables = _expect_list(root.get("observables"), "observables", length=2)
    kernels = [
        _kernel_from_jsonable(entry, f"observables[{i}]", phase)
        for i, entry in enumerate(observables)
    ]
    joint_value = root.get("joint", "classical-product")
    if joint_value == "classical-product":
        joint = None
    else:
        mapping = _expect_mapping(joint_value, "joint")
        if set(mapping) != {"kernel"}:
            _fail("joint", "expected 'classical-product' or an object with a 'kernel' array")
        codomain = ProductSpace(kernels[0].codomain, kernels[1].codomain)
        joint = _wrap(
            "joint",
            lambda: ClassicalJoint(
                phase,
                codomain,
                _kernel_rows(mapping["kernel"], "joint.kernel", phase, codomain),
            ),
        )
    return ClassicalScenario(
        name=name,
        phase_space=phase,
        state=state,
        observable_1=kernels[0],
        observable_2=kernels[1],
        joint=joint,
    )


def _kernel_rows(value, path: str, phase: PhaseSpace, codomain) -> dict:
    rows = _expect_list(value, path, length=len(phase))
    outcomes = codomain.outcomes
    table = {}
    for i, (point, row) in enumerate(zip(phase.labels, rows)):
        entries = _expect_list(row, f"{path}[{i}]", length=len(outcomes))
        table[point] = {
            outcome: _real(entry, f"{path}[{i}][{j}]")
            for j, (outcome, entry) in enumerate(zip(outcomes, entries))
        }
    return table


def _kernel_from_jsonable(entry, path: str, phase: PhaseSpace) -> ClassicalObservable:
    mapping = _expect_mapping(entry, path)
    labels = _labels(mapping.get("labels"), f"{path}.labels")
    codomain = _wrap(f"{path}.labels", lambda: OutcomeSpace(labels))
    rows = _kernel_rows(mapping.get("kernel"), f"{path}.kernel", phase, codomain)
    return _wrap(path, lambda: ClassicalObservable(phase, codomain, rows))


# ---------------------------------------------------------------------------
# serialization (normalized form)


def _complex_pair(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def _matrix_jsonable(matrix: np.ndarray) -> list:
    return [[_complex_pair(entry) for entry in row] for row in np.asarray(matrix, dtype=complex)]


def _vector_jsonable(vector: np.ndarray) -> list:
    return [_complex_pair(entry) for entry in np.asarray(vector, dtype=complex)]


def scenario_to_jsonable(scenario: Scenario) -> dict:
    """Serialize a scenario back to the normalized JSON form."""
    if isinstance(scenario, QuantumScenario):
        return _quantum_to_jsonable(scenario)
    if isinstance(scenario, ClassicalScenario):
        return _classical_to_jsonable(scenario)
    raise ValidationError(f"not a scenario: {scenario!r}")


def _povm_jsonable(observable: Povm) -> dict:
    return {
        "labels": list(observable.space.labels),
        "effects": [_matrix_jsonable(observable.effect(l)) for l in observable.space.labels],
    }


def _quantum_to_jsonable(scenario: QuantumScenario) -> dict:
    if scenario.spectral:
        decompositions = "spectral"
    else:
        decompositions = {
            name: [
                {"weight": weight, "vector": _vector_jsonable(state.vector)}
                for weight, state in dec.components
            ]
            for name, dec in scenario.decompositions.items()
        }
    if scenario.joint is None:
        joint = "auto-commuting"
    else:
        joint = {
            "effects": [
                _matrix_jsonable(scenario.joint.effect(point))
                for point in scenario.joint.space.points
            ]
        }
    return {
        "schema": SCHEMA,
        "name": scenario.name,
        "mode": "quantum",
        "dim": scenario.state.dim,
        "state": _matrix_jsonable(scenario.state.matrix),
        "observables": [
            _povm_jsonable(scenario.observable_1),
            _povm_jsonable(scenario.observable_2),
        ],
        "joint": joint,
        "decompositions": decompositions,
    }


def _kernel_jsonable(observable: ClassicalObservable) -> dict:
    outcomes = observable.codomain.outcomes
    return {
        "labels": [list(o) if isinstance(o, tuple) else o for o in outcomes],
        "kernel": [
            [observable.row(point).weight(o) for o in outcomes]
            for point in observable.domain.labels
        ],
    }


def _classical_to_jsonable(scenario: ClassicalScenario) -> dict:
    if scenario.joint is None:
        joint = "classical-product"
    else:
        joint = {"kernel": _kernel_jsonable(scenario.joint)["kernel"]}
    return {
        "schema": SCHEMA,
        "name": scenario.name,
        "mode": "classical",
        "phase_space": list(scenario.phase_space.labels),
        "state": [scenario.state.weight(p) for p in scenario.phase_space.labels],
        "observables": [
            {
                "labels": list(scenario.observable_1.codomain.labels),
                "kernel": _kernel_jsonable(scenario.observable_1)["kernel"],
            },
            {
                "labels": list(scenario.observable_2.codomain.labels),
                "kernel": _kernel_jsonable(scenario.observable_2)["kernel"],
            },
        ],
        "joint": joint,
    }


# ---------------------------------------------------------------------------
# running


def run_scenario(scenario: Scenario, decomposition: str | None = None) -> ReportDocument:
    """Run a scenario and assemble the report document.

    `decomposition` restricts a quantum run to one named decomposition, or
    forces the spectral default with the literal name "spectral". Classical
    scenarios ignore it (their split is canonical).
    """
    if isinstance(scenario, QuantumScenario):
        return _run_quantum(scenario, decomposition)
    if isinstance(scenario, ClassicalScenario):
        return _run_classical(scenario)
    raise ValidationError(f"not a scenario: {scenario!r}")


def _select_decompositions(scenario: QuantumScenario, requested: str | None):
    if requested == "spectral":
        return [("spectral", scenario.state)]
    if requested is not None:
        if requested not in scenario.decompositions:
            known = sorted(scenario.decompositions) + ["spectral"]
            raise ValidationError(
                f"unknown decomposition {requested!r}; available: {', '.join(known)}"
            )
        return [(requested, scenario.decompositions[requested])]
    if scenario.spectral:
        return [("spectral", scenario.state)]
    if not scenario.decompositions:
        raise ValidationError("scenario declares no decompositions")
    return list(scenario.decompositions.items())


def _run_quantum(scenario: QuantumScenario, requested: str | None) -> ReportDocument:
    a1, a2 = scenario.observable_1, scenario.observable_2
    joint = scenario.joint if scenario.joint is not None else joint_from_commuting(a1, a2)
    selected = _select_decompositions(scenario, requested)
    blocks = []
    shared = None
    for name, dec in selected:
        result = correlation_report(joint, a1, a2, dec)
        shared = shared or result
        blocks.append(
            DecompositionBlock(
                name=name,
                source=result.decomposition_source,
                size=result.decomposition_size,
                classical_product=result.classical_product,
                rho_c=result.rho_c,
                rho_e=result.rho_e,
                rho_c_error=result.rho_c_error,
                rho_e_error=result.rho_e_error,
                product_rule_residual=result.product_rule_residual,
            )
        )

    purity = scenario.state.purity()
    pure = purity >= 1.0 - EPS
    flags = {
        "joint_mode": "explicit" if scenario.joint is not None else "auto-commuting",
        "joint_marginals_consistent": True,  # enforced by the engine
        "state_pure": pure,
        "decomposition_relative": not pure,
        "spectral_decomposition_used": any(b.source == "spectral" for b in blocks),
    }
    notes = _quantum_notes(shared, blocks, pure)
    return ReportDocument(
        scenario=scenario_to_jsonable(scenario),
        mode="quantum",
        space=shared.joint_measure.space,
        joint_measure=shared.joint_measure,
        marginal_1=shared.marginal_1,
        marginal_2=shared.marginal_2,
        product_measure=shared.product_measure,
        rho_t=shared.rho_t,
        blocks=blocks,
        flags=flags,
        notes=notes,
    )


def _quantum_notes(shared, blocks, pure: bool) -> list[str]:
    notes = []
    if not pure:
        notes.append(
            "classical and entanglement densities are relative to the chosen "
            "decomposition; only their product is decomposition-independent"
        )
    if any(b.source == "spectral" for b in blocks):
        notes.append(
            "the spectral decomposition is one convex decomposition among many"
        )
    support = sorted(shared.rho_t.support)
    if len(support) == 1:
        point = support[0]
        notes.append(
            f"joint and product statistics are concentrated at ({point[0]},{point[1]}); "
            "all other outcomes carry no mass"
        )
    if shared.rho_t.deviation_from(1.0) <= EPS:
        for block in blocks:
            if block.rho_c is not None and block.rho_c.deviation_from(1.0) > 1e-6:
                notes.append(
                    f"decomposition '{block.name}': total correlation is trivial, yet "
                    "classical correlation and entanglement are both present and "
                    "compensate each other"
                )
    return notes


def _run_classical(scenario: ClassicalScenario) -> ReportDocument:
    a1, a2 = scenario.observable_1, scenario.observable_2
    canonical = classical_joint(a1, a2)
    joint = scenario.joint if scenario.joint is not None else canonical
    state = scenario.state

    joint_measure = apply(joint, state)
    marginal_1 = apply(a1, state)
    marginal_2 = apply(a2, state)
    product_measure = product(marginal_1, marginal_2)
    classical_product = apply(canonical, state)

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

    block = DecompositionBlock(
        name="classical-product",
        source="canonical",
        size=None,
        classical_product=classical_product,
        rho_c=rho_c,
        rho_e=rho_e,
        rho_c_error=rho_c_error,
        rho_e_error=rho_e_error,
        product_rule_residual=residual,
    )
    state_is_dirac = max(state.weights.values()) >= 1.0 - EPS
    flags = {
        "joint_mode": "explicit" if scenario.joint is not None else "classical-product",
        "joint_marginally_consistent": is_marginally_consistent(joint, a1, a2),
        "observable_1_deterministic": is_deterministic(a1),
        "observable_2_deterministic": is_deterministic(a2),
        "state_dirac": state_is_dirac,
    }
    notes = []
    if state_is_dirac and rho_e is not None and rho_e.deviation_from(1.0) > 1e-6:
        notes.append(
            "entanglement-type correlation at a pure (Dirac) state: the chosen "
            "joint correlates outcomes beyond the product coupling"
        )
    return ReportDocument(
        scenario=scenario_to_jsonable(scenario),
        mode="classical",
        space=joint.codomain,
        joint_measure=joint_measure,
        marginal_1=marginal_1,
        marginal_2=marginal_2,
        product_measure=product_measure,
        rho_t=rho_t,
        blocks=[block],
        flags=flags,
        notes=notes,
    )
