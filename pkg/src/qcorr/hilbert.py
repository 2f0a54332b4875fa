"""Finite-dimensional complex linear algebra for states and operators.

Operators are plain complex numpy arrays; the classes here validate their
defining invariants once, at construction, and are immutable afterwards.
The tensor convention is row-major Kronecker order: for two qubits the
product basis is ordered (up,up), (up,down), (down,up), (down,down).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonHermitianInput,
    ValidationError,
)
from .tolerance import EPS, RECONSTRUCTION_TOL, validation_eps

__all__ = [
    "PureState",
    "DensityOperator",
    "ConvexDecomposition",
    "tensor",
    "expectation",
    "hermitian_eigenvalues",
    "hermitian_eigensystem",
    "spectral_decompose",
    "random_decomposition",
]


def _as_complex_matrix(value, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(value, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


def _max_abs(arr: np.ndarray) -> float:
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def _hermitian_deviation(arr: np.ndarray) -> float:
    return _max_abs(arr - arr.conj().T)


class PureState:
    """A unit vector of C^d, identified with the rank-one state it spans."""

    __slots__ = ("_vector",)

    def __init__(self, vector):
        arr = np.asarray(vector, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ValidationError(f"state vector must be one-dimensional, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("state vector contains non-finite entries")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > validation_eps():
            raise ValidationError(f"state vector norm is {norm!r}, expected 1")
        self._vector = _readonly(arr)

    @property
    def vector(self) -> np.ndarray:
        return self._vector

    @property
    def dim(self) -> int:
        return self._vector.shape[0]

    def projector(self) -> np.ndarray:
        """The rank-one projector onto this state."""
        return np.outer(self._vector, self._vector.conj())

    def tensor(self, other: "PureState") -> "PureState":
        """Product state of this vector with `other` (row-major order)."""
        return PureState(np.kron(self._vector, other._vector))

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


class DensityOperator:
    """Positive Hermitian matrix of unit trace describing a possibly mixed state."""

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        arr = _as_complex_matrix(matrix, name="density matrix")
        eps = validation_eps()
        deviation = _hermitian_deviation(arr)
        if deviation > eps:
            raise ValidationError(
                f"density matrix is not Hermitian (max deviation {deviation:.3e})"
            )
        trace = complex(np.trace(arr)).real
        if abs(trace - 1.0) > eps:
            raise ValidationError(f"density matrix trace is {trace!r}, expected 1")
        smallest = float(np.min(hermitian_eigenvalues(arr)))
        if smallest < -eps:
            raise ValidationError(
                f"density matrix has negative eigenvalue {smallest:.3e}"
            )
        self._matrix = _readonly(arr)

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityOperator":
        """The rank-one density operator of a pure state."""
        return cls(state.projector())

    @classmethod
    def from_mixture(
        cls, components: Iterable[tuple[float, PureState]]
    ) -> "DensityOperator":
        """The density operator sum(w_i |psi_i><psi_i|) of a weighted family."""
        components = list(components)
        if not components:
            raise ValidationError("mixture needs at least one component")
        dim = components[0][1].dim
        total = np.zeros((dim, dim), dtype=complex)
        for weight, state in components:
            if state.dim != dim:
                raise DimensionMismatch(
                    f"mixture mixes dimensions {dim} and {state.dim}"
                )
            total += float(weight) * state.projector()
        return cls(total)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def purity(self) -> float:
        """Tr(D^2); equals 1 exactly when the state is pure."""
        return float(np.trace(self._matrix @ self._matrix).real)

    def __repr__(self) -> str:
        return f"DensityOperator(dim={self.dim}, purity={self.purity():.6g})"


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two square operators, row-major index order.

    Satisfies Tr(a (x) b) = Tr(a) Tr(b) and maps projectors of vectors to the
    projector of the tensored vector.
    """
    left = _as_complex_matrix(a, name="left tensor factor")
    right = _as_complex_matrix(b, name="right tensor factor")
    return np.kron(left, right)


def expectation(effect, state: DensityOperator) -> float:
    """Expectation value Tr(E D) of an effect at a density operator.

    Parameters
    ----------
    effect : array_like
        Square matrix of the same dimension as `state`. Must be Hermitian;
        positivity is the caller's obligation (every effect produced by this
        package is validated at construction).
    state : DensityOperator

    Returns
    -------
    float
        The real trace value. An imaginary part above tolerance raises
        NonHermitianInput, since it means the inputs were not Hermitian.
    """
    matrix = _as_complex_matrix(effect, name="effect")
    if matrix.shape[0] != state.dim:
        raise DimensionMismatch(
            f"effect dimension {matrix.shape[0]} does not match state dimension {state.dim}"
        )
    eps = validation_eps()
    deviation = _hermitian_deviation(matrix)
    if deviation > eps:
        raise NonHermitianInput(f"effect is not Hermitian (max deviation {deviation:.3e})")
    value = complex(np.trace(matrix @ state.matrix))
    if abs(value.imag) > eps:
        raise NonHermitianInput(f"Tr(E D) has imaginary part {value.imag!r}")
    return float(value.real)


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending; solver failures surface
    as ConvergenceFailure."""
    arr = _as_complex_matrix(matrix)
    try:
        return np.linalg.eigvalsh(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc


def hermitian_eigensystem(matrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvectors.

    Returns
    -------
    (values, vectors)
        `values[i]` belongs to the column `vectors[:, i]`. Within a
        degenerate eigenspace the basis choice is solver dependent.
    """
    arr = _as_complex_matrix(matrix)
    deviation = _hermitian_deviation(arr)
    if deviation > validation_eps():
        raise NonHermitianInput(f"matrix is not Hermitian (max deviation {deviation:.3e})")
    try:
        values, vectors = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    return values[::-1].copy(), vectors[:, ::-1].copy()


class ConvexDecomposition:
    """A convex mixture of pure states realizing a target density operator.

    The target admits, in general, many such decompositions; statistics that
    depend on the decomposition must be read relative to it. Weights are
    strictly positive, sum to one, and the weighted projectors rebuild the
    target entrywise within the reconstruction tolerance.
    """

    __slots__ = ("_components", "_target")

    def __init__(self, components: Iterable[tuple[float, PureState]], target: DensityOperator):
        comps = []
        for entry in components:
            weight, state = entry
            weight = float(weight)
            if not isinstance(state, PureState):
                raise ValidationError("decomposition components must be (weight, PureState) pairs")
            if not math.isfinite(weight) or weight <= 0.0:
                raise ValidationError(f"decomposition weight {weight!r} must be positive")
            if state.dim != target.dim:
                raise DimensionMismatch(
                    f"component dimension {state.dim} does not match target dimension {target.dim}"
                )
            comps.append((weight, state))
        if not comps:
            raise ValidationError("decomposition needs at least one component")
        total = math.fsum(w for w, _ in comps)
        if abs(total - 1.0) > validation_eps():
            raise ValidationError(f"decomposition weights sum to {total!r}, expected 1")
        rebuilt = sum(w * s.projector() for w, s in comps)
        error = _max_abs(rebuilt - target.matrix)
        if error > RECONSTRUCTION_TOL:
            raise ValidationError(
                f"decomposition does not reconstruct the target state (max entry error {error:.3e})"
            )
        self._components = tuple(comps)
        self._target = target

    @classmethod
    def from_components(
        cls, components: Iterable[tuple[float, PureState]]
    ) -> "ConvexDecomposition":
        """Decomposition whose target is the mixture of the components."""
        components = list(components)
        return cls(components, DensityOperator.from_mixture(components))

    @property
    def components(self) -> tuple[tuple[float, PureState], ...]:
        return self._components

    @property
    def target(self) -> DensityOperator:
        return self._target

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self._components)

    def reconstruction(self) -> np.ndarray:
        """sum(w_i |psi_i><psi_i|) as a fresh matrix."""
        return sum(w * s.projector() for w, s in self._components)

    def __len__(self) -> int:
        return len(self._components)

    def __repr__(self) -> str:
        return f"ConvexDecomposition(size={len(self)}, dim={self._target.dim})"


def spectral_decompose(state: DensityOperator) -> ConvexDecomposition:
    """Eigen-decomposition of a density operator as a pure-state mixture.

    Eigenvalues at or below the support epsilon are dropped, the rest are
    sorted descending. This is one convex decomposition among many; for a
    degenerate spectrum even the eigenbasis itself is not unique.
    """
    values, vectors = hermitian_eigensystem(state.matrix)
    components = [
        (float(value), PureState(vectors[:, index]))
        for index, value in enumerate(values)
        if value > EPS
    ]
    return ConvexDecomposition(components, state)


def random_decomposition(
    state: DensityOperator, size: int, rng: np.random.Generator
) -> ConvexDecomposition:
    """A random convex decomposition of `state` into about `size` components.

    Mixes the spectral components through a random isometry, which by
    construction realizes exactly the same operator. Useful for exploring how
    decomposition-relative statistics move while the state stays fixed.
    `size` must be at least the rank of the state; components whose weight
    underflows are dropped.
    """
    spectral = spectral_decompose(state)
    rank = len(spectral)
    if size < rank:
        raise ValidationError(f"size {size} is below the state rank {rank}")
    ginibre = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    basis, _ = np.linalg.qr(ginibre)
    isometry = basis[:, :rank]
    scaled = np.stack(
        [math.sqrt(w) * s.vector for w, s in spectral.components]
    )  # rank x dim
    components = []
    for row in isometry:
        vector = row @ scaled
        weight = float(np.real(np.vdot(vector, vector)))
        if weight > 1e-12:
            components.append((weight, PureState(vector / math.sqrt(weight))))
    return ConvexDecomposition(components, state)
