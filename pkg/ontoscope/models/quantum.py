"""
Exact small-dimension quantum objects: pure states, density operators,
effects, qubit observables and the Hilbert-space overlap quantities that the
ontological-model checks are compared against.

All objects are immutable once constructed; array fields are stored
read-only.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ontoscope.errors import (
    DimensionMismatchError,
    InvalidOperatorError,
    NormalizationError,
)


NORMALIZATION_TOL = 1e-10
RENORMALIZE_TOL = 1e-6
OPERATOR_TOL = 1e-10
BORN_TOL = 1e-9

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

_SQRT_HALF = np.sqrt(0.5)

NAMED_STATES = {
    "0": (1.0, 0.0),
    "1": (0.0, 1.0),
    "+": (_SQRT_HALF, _SQRT_HALF),
    "-": (_SQRT_HALF, -_SQRT_HALF),
    "+i": (_SQRT_HALF, 1j * _SQRT_HALF),
    "-i": (_SQRT_HALF, -1j * _SQRT_HALF),
}


def _frozen(array):
    array.setflags(write=False)
    return array


def _check_square(matrix, what):
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidOperatorError(f"{what} must be a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] < 2:
        raise DimensionMismatchError(f"{what} dimension must be at least 2")


def _check_hermitian(matrix, what):
    if np.max(np.abs(matrix - matrix.conj().T)) > OPERATOR_TOL:
        raise InvalidOperatorError(f"{what} is not Hermitian")


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A normalized pure state |psi> in C^d."""
    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 2:
            raise DimensionMismatchError("a quantum state needs dimension >= 2")
        norm_sq = float(np.vdot(amps, amps).real)
        drift = abs(norm_sq - 1.0)
        if drift > RENORMALIZE_TOL:
            raise NormalizationError(
                f"state norm^2 {norm_sq:.6g} is not 1 (tolerance {RENORMALIZE_TOL:g})"
            )
        if drift > NORMALIZATION_TOL:
            amps = amps / np.sqrt(norm_sq)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self):
        return int(self.amplitudes.size)

    @classmethod
    def from_label(cls, label):
        """Named qubit states: 0, 1, +, -, +i, -i."""
        if label not in NAMED_STATES:
            raise ValueError(f"unknown state label '{label}' (expected one of {sorted(NAMED_STATES)})")
        return cls(np.array(NAMED_STATES[label], dtype=complex), label=label)

    @classmethod
    def from_bloch(cls, vector, label=""):
        v = np.asarray(vector, dtype=float)
        norm = np.linalg.norm(v)
        if v.shape != (3,) or norm == 0:
            raise DimensionMismatchError("Bloch vector must be a nonzero real 3-vector")
        x, y, z = v / norm
        theta = np.arccos(np.clip(z, -1.0, 1.0))
        phi = np.arctan2(y, x)
        amps = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
        return cls(amps, label=label)

    def bloch_vector(self):
        if self.dim != 2:
            raise DimensionMismatchError("Bloch vectors are defined for qubits only")
        a, b = self.amplitudes
        cross = np.conj(a) * b
        return np.array([2 * cross.real, 2 * cross.imag, abs(a) ** 2 - abs(b) ** 2])

    def orthogonal(self, label=None):
        """The qubit state orthogonal to this one (antipodal Bloch vector)."""
        if self.dim != 2:
            raise DimensionMismatchError("orthogonal complement is only unique for qubits")
        a, b = self.amplitudes
        if label is None:
            label = f"{self.label}_perp" if self.label else ""
        return QuantumState(np.array([-np.conj(b), np.conj(a)]), label=label)

    def density(self):
        return DensityOperator.from_state(self)

    def projector(self):
        return Effect(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        _check_square(m, "density operator")
        _check_hermitian(m, "density operator")
        trace = float(np.trace(m).real)
        drift = abs(trace - 1.0)
        if drift > RENORMALIZE_TOL:
            raise NormalizationError(f"density operator trace {trace:.6g} is not 1")
        if drift > NORMALIZATION_TOL:
            m = m / trace
        if np.min(np.linalg.eigvalsh(m)) < -OPERATOR_TOL:
            raise InvalidOperatorError("density operator has a negative eigenvalue")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self):
        return int(self.matrix.shape[0])

    @classmethod
    def from_state(cls, state):
        return cls(np.outer(state.amplitudes, state.amplitudes.conj()))

    @classmethod
    def maximally_mixed(cls, dim=2):
        return cls(np.eye(dim, dtype=complex) / dim)

    @classmethod
    def mix(cls, weights, operators):
        """Convex combination sum_i w_i rho_i."""
        weights = np.asarray(weights, dtype=float)
        if len(weights) != len(operators) or not operators:
            raise ValueError("weights and operators must be non-empty and aligned")
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > RENORMALIZE_TOL:
            raise NormalizationError("mixing weights must be non-negative and sum to 1")
        dims = {op.dim for op in operators}
        if len(dims) != 1:
            raise DimensionMismatchError("cannot mix operators of different dimension")
        return cls(sum(w * op.matrix for w, op in zip(weights, operators)))

    def purity(self):
        return float(np.trace(self.matrix @ self.matrix).real)

    def is_pure(self, tol=1e-9):
        return abs(self.purity() - 1.0) <= tol

    def approx_equal(self, other, tol=1e-8):
        if self.dim != other.dim:
            return False
        return float(np.max(np.abs(self.matrix - other.matrix))) <= tol


@dataclass(frozen=True, eq=False)
class Effect:
    """A POVM element 0 <= E <= I."""
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        _check_square(m, "effect")
        _check_hermitian(m, "effect")
        eig = np.linalg.eigvalsh(m)
        if eig.min() < -OPERATOR_TOL or eig.max() > 1.0 + OPERATOR_TOL:
            raise InvalidOperatorError("effect eigenvalues must lie in [0, 1]")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self):
        return int(self.matrix.shape[0])

    def complement(self):
        return Effect(np.eye(self.dim, dtype=complex) - self.matrix)


@dataclass(frozen=True, eq=False)
class QubitObservable:
    """A = b . sigma with |b| = 1, eigenvalues exactly +1 and -1."""
    bloch: np.ndarray
    label: str = ""
    matrix: np.ndarray = field(init=False)

    def __post_init__(self):
        b = np.array(self.bloch, dtype=float).reshape(-1)
        if b.shape != (3,):
            raise DimensionMismatchError("qubit observable needs a real 3-vector")
        norm = np.linalg.norm(b)
        if abs(norm - 1.0) > RENORMALIZE_TOL:
            raise NormalizationError(f"Bloch vector length {norm:.6g} is not 1")
        b = b / norm
        object.__setattr__(self, "bloch", _frozen(b))
        object.__setattr__(self, "matrix", _frozen(np.einsum("i,ijk->jk", b, PAULI)))

    def eigenstate(self, sign, label=None):
        """|A^+> for sign=+1, |A^-> for sign=-1."""
        if label is None and self.label:
            label = f"{self.label}{'+' if sign > 0 else '-'}"
        return QuantumState.from_bloch(sign * self.bloch, label=label or "")


def _require_same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")


def overlap_sq(a: QuantumState, b: QuantumState) -> float:
    """|<a|b>|^2."""
    _require_same_dim(a, b)
    value = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return float(min(1.0, value))


def trace_distance_pure(a: QuantumState, b: QuantumState) -> float:
    return float(np.sqrt(max(0.0, 1.0 - overlap_sq(a, b))))


def quantum_overlap(a: QuantumState, b: QuantumState) -> float:
    """L_Q = 1 - sqrt(1 - |<a|b>|^2)."""
    return 1.0 - trace_distance_pure(a, b)


def born_probability(rho: DensityOperator, effect: Effect, tol: float = BORN_TOL) -> float:
    """Tr(rho E), clamped onto [0, 1] only when within tol of the bounds."""
    if rho.dim != effect.dim:
        raise DimensionMismatchError(f"dimension mismatch: {rho.dim} vs {effect.dim}")
    value = np.trace(rho.matrix @ effect.matrix)
    if abs(value.imag) > tol:
        raise InvalidOperatorError(f"Tr(rho E) has imaginary part {value.imag:.3g}")
    p = float(value.real)
    if p < -tol or p > 1.0 + tol:
        raise InvalidOperatorError(f"Tr(rho E) = {p:.6g} lies outside [0, 1]")
    return min(1.0, max(0.0, p))


def trine_observables() -> Tuple[QubitObservable, QubitObservable, QubitObservable]:
    """A_1, A_2, A_3 with Bloch vectors in the x-z plane at 2*pi*t/3 from +z."""
    observables = []
    for t in range(3):
        angle = 2.0 * np.pi * t / 3.0
        observables.append(
            QubitObservable(np.array([np.sin(angle), 0.0, np.cos(angle)]), label=f"A{t + 1}")
        )
    return tuple(observables)


def projectors_of(observable: QubitObservable) -> Tuple[Effect, Effect]:
    """(A^+, A^-) = ((I + A)/2, (I - A)/2)."""
    identity = np.eye(2, dtype=complex)
    return (
        Effect((identity + observable.matrix) / 2.0),
        Effect((identity - observable.matrix) / 2.0),
    )


def haar_random_state(rng, dim: int = 2, label: str = "") -> QuantumState:
    """Haar-uniform pure state from a seeded numpy Generator."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return QuantumState(z / np.linalg.norm(z), label=label)


def same_state(a: QuantumState, b: QuantumState, tol: float = 1e-9) -> bool:
    """Equality up to global phase."""
    return a.dim == b.dim and overlap_sq(a, b) >= 1.0 - tol


def state_of(rho: DensityOperator, tol: float = 1e-9):
    """The pure state behind a rank-1 density operator, or None."""
    if not rho.is_pure(tol):
        return None
    values, vectors = np.linalg.eigh(rho.matrix)
    return QuantumState(vectors[:, int(np.argmax(values))])
