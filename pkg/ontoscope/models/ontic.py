"""
Finite representation of an ontological model: a quadrature-weighted ontic
space, epistemic states and response functions living on it, preparation
procedures, and the Born-rule reproduction check.

Densities are stored as values of a density function against the quadrature
measure, so every integral over Lambda is the literal sum sum_i w_i * (.).
"""

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from ontoscope.errors import (
    DimensionMismatchError,
    InvalidOperatorError,
    MissingPreparationError,
    MissingResponseError,
    NormalizationError,
    OntoscopeError,
    SpaceMismatchError,
    UnknownOutcomeError,
)
from ontoscope.models.quantum import (
    NAMED_STATES,
    DensityOperator,
    Effect,
    QuantumState,
    born_probability,
    state_of,
)

logger = logging.getLogger(__name__)

SPHERE_AREA = 4.0 * np.pi
SPHERE_WEIGHT_RTOL = 1e-6
EPISTEMIC_NORM_TOL = 1e-6
RESPONSE_SUM_TOL = 1e-9
DEFAULT_SUPPORT_EPS_REL = 1e-9
MIXTURE_WEIGHT_TOL = 1e-9

BORN_REFERENCE_N = 20000
BORN_REFERENCE_TOL = 2e-2

SPACE_KINDS = ("fibonacci-sphere", "abstract")


def _frozen(array):
    array.setflags(write=False)
    return array


def fibonacci_sphere_points(n):
    """Spherical Fibonacci lattice of n unit vectors, ordered by decreasing z."""
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


@dataclass(frozen=True, eq=False)
class OnticSpace:
    kind: str
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.kind not in SPACE_KINDS:
            raise OntoscopeError(f"unknown ontic space kind '{self.kind}'")
        points = np.array(self.points)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.size == 0 or len(points) != weights.size:
            raise DimensionMismatchError("points and weights must be non-empty and of equal length")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise NormalizationError("quadrature weights must be positive and finite")
        if self.kind == "fibonacci-sphere":
            points = points.astype(float)
            if points.ndim != 2 or points.shape[1] != 3:
                raise DimensionMismatchError("sphere points must be an (N, 3) array")
            if np.max(np.abs(np.linalg.norm(points, axis=1) - 1.0)) > 1e-9:
                raise NormalizationError("sphere points must be unit vectors")
            total = weights.sum()
            if abs(total - SPHERE_AREA) > SPHERE_WEIGHT_RTOL * SPHERE_AREA:
                raise NormalizationError(f"sphere weights sum to {total:.8g}, expected 4*pi")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "weights", _frozen(weights))

    @property
    def size(self):
        return int(self.weights.size)

    @property
    def is_sphere(self):
        return self.kind == "fibonacci-sphere"

    @classmethod
    def fibonacci_sphere(cls, n):
        return cls("fibonacci-sphere", fibonacci_sphere_points(n), np.full(n, SPHERE_AREA / n))

    @classmethod
    def abstract(cls, n, weights=None):
        if weights is None:
            weights = np.ones(n)
        return cls("abstract", np.arange(n), weights)

    def same_as(self, other):
        if self is other:
            return True
        return (
            self.kind == other.kind
            and self.size == other.size
            and np.array_equal(self.weights, other.weights)
        )

    def nearest_point(self, vector):
        if not self.is_sphere:
            raise OntoscopeError("nearest_point needs a Bloch-sphere space")
        return int(np.argmax(self.points @ np.asarray(vector, dtype=float)))


@dataclass(frozen=True, eq=False)
class EpistemicState:
    """mu_P(lambda|rho): non-negative density, normalized under the quadrature measure."""
    space: OnticSpace
    density: np.ndarray
    check_normalization: bool = True

    def __post_init__(self):
        d = np.array(self.density, dtype=float).reshape(-1)
        if d.size != self.space.size:
            raise DimensionMismatchError(
                f"density has {d.size} entries, ontic space has {self.space.size}"
            )
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise NormalizationError("epistemic density must be finite and non-negative")
        if self.check_normalization:
            total = float(np.dot(self.space.weights, d))
            if abs(total - 1.0) > EPISTEMIC_NORM_TOL:
                raise NormalizationError(f"epistemic state integrates to {total:.8g}, not 1")
        object.__setattr__(self, "density", _frozen(d))

    @classmethod
    def from_values(cls, space, values):
        """Normalize raw non-negative values under the quadrature measure."""
        values = np.asarray(values, dtype=float)
        total = float(np.dot(space.weights, values))
        if total <= 0:
            raise NormalizationError("cannot normalize an all-zero density")
        return cls(space, values / total)

    @classmethod
    def point_mass(cls, space, index):
        density = np.zeros(space.size)
        density[index] = 1.0 / space.weights[index]
        return cls(space, density)

    @classmethod
    def uniform(cls, space):
        return cls(space, np.full(space.size, 1.0 / space.weights.sum()))

    def total(self):
        return float(np.dot(self.space.weights, self.density))

    def scaled(self, factor):
        """Unnormalized copy; used for negative controls only."""
        return EpistemicState(self.space, self.density * factor, check_normalization=False)


@dataclass(frozen=True, eq=False)
class ResponseFunction:
    """xi_M(k|lambda): one row per ontic point, one column per outcome."""
    table: np.ndarray
    outcomes: Tuple[str, ...]

    def __post_init__(self):
        table = np.array(self.table, dtype=float)
        outcomes = tuple(str(o) for o in self.outcomes)
        if table.ndim != 2 or table.shape[1] != len(outcomes):
            raise DimensionMismatchError("response table must be (N, number of outcomes)")
        if len(set(outcomes)) != len(outcomes):
            raise OntoscopeError("outcome labels must be distinct")
        if np.any(table < -RESPONSE_SUM_TOL) or np.any(table > 1.0 + RESPONSE_SUM_TOL):
            raise NormalizationError("response values must lie in [0, 1]")
        if np.max(np.abs(table.sum(axis=1) - 1.0)) > RESPONSE_SUM_TOL:
            raise NormalizationError("response values must sum to 1 over outcomes at every point")
        object.__setattr__(self, "table", _frozen(np.clip(table, 0.0, 1.0)))
        object.__setattr__(self, "outcomes", outcomes)

    @property
    def size(self):
        return int(self.table.shape[0])

    def column(self, outcome):
        try:
            return self.outcomes.index(str(outcome))
        except ValueError:
            raise UnknownOutcomeError(
                f"unknown outcome '{outcome}' (known: {', '.join(self.outcomes)})"
            ) from None


@dataclass(frozen=True, eq=False)
class Measurement:
    """An effect set {E_k} together with the response function that realizes it."""
    label: str
    effects: Tuple[Effect, ...]
    response: ResponseFunction

    def __post_init__(self):
        effects = tuple(self.effects)
        if len(effects) != len(self.response.outcomes):
            raise DimensionMismatchError("one effect per outcome is required")
        dim = effects[0].dim
        if any(e.dim != dim for e in effects):
            raise DimensionMismatchError(f"effects of measurement '{self.label}' differ in dimension")
        total = sum(e.matrix for e in effects)
        if np.max(np.abs(total - np.eye(dim))) > 1e-8:
            raise InvalidOperatorError(f"effects of measurement '{self.label}' do not sum to I")
        object.__setattr__(self, "effects", effects)

    @property
    def outcomes(self):
        return self.response.outcomes

    def effect(self, outcome):
        return self.effects[self.response.column(outcome)]


@dataclass(frozen=True, eq=False)
class PreparationProcedure:
    label: str
    target: DensityOperator
    epistemic: EpistemicState
    context: str = ""
    decomposition: Tuple[Tuple[float, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "decomposition", tuple((float(w), str(lab)) for w, lab in self.decomposition)
        )

    @property
    def is_pure(self):
        return self.target.is_pure()

    @property
    def state(self):
        """The prepared pure state, or None for a mixed target."""
        return state_of(self.target)


@dataclass(frozen=True, eq=False)
class OntologicalModel:
    space: OnticSpace
    preparations: Tuple[PreparationProcedure, ...]
    measurements: Dict[str, Measurement] = field(default_factory=dict)
    metadata: Dict = field(default_factory=dict)

    def __post_init__(self):
        preps = tuple(self.preparations)
        labels = [p.label for p in preps]
        if len(set(labels)) != len(labels):
            raise OntoscopeError("preparation labels must be unique")
        for prep in preps:
            if not prep.epistemic.space.same_as(self.space):
                raise SpaceMismatchError(f"preparation '{prep.label}' lives on another ontic space")
        for label, m in self.measurements.items():
            if m.response.size != self.space.size:
                raise SpaceMismatchError(f"measurement '{label}' response does not match the ontic space")
        object.__setattr__(self, "preparations", preps)
        object.__setattr__(self, "measurements", dict(self.measurements))
        object.__setattr__(self, "metadata", dict(self.metadata))

    def preparation(self, label):
        for prep in self.preparations:
            if prep.label == label:
                return prep
        raise MissingPreparationError(f"no preparation labelled '{label}'")

    def preparations_for(self, target, tol=1e-8):
        """All procedures whose target equals ``target`` (a state or density operator)."""
        if isinstance(target, QuantumState):
            target = target.density()
        return [p for p in self.preparations if p.target.approx_equal(target, tol)]

    def preparation_for(self, target, tol=1e-8):
        found = self.preparations_for(target, tol)
        if not found:
            name = getattr(target, "label", "") or "requested state"
            raise MissingPreparationError(f"model has no preparation for {name}")
        return found[0]

    def state_for_label(self, label):
        """A named qubit state, or the pure state of the preparation with that label."""
        if label in NAMED_STATES:
            return QuantumState.from_label(label)
        state = self.preparation(label).state
        if state is None:
            raise MissingPreparationError(f"preparation '{label}' does not prepare a pure state")
        return QuantumState(state.amplitudes, label=label)

    def pure_preparations(self):
        return [p for p in self.preparations if p.is_pure]

    def mixed_preparations(self):
        return [p for p in self.preparations if not p.is_pure]

    def measurement(self, label):
        try:
            return self.measurements[label]
        except KeyError:
            raise MissingResponseError(f"no response function registered for '{label}'") from None

    def measurement_for(self, state, tol=1e-8):
        """The measurement whose first effect is the projector onto ``state``."""
        projector = state.projector().matrix
        for m in self.measurements.values():
            first = m.effects[0].matrix
            if first.shape == projector.shape and np.max(np.abs(first - projector)) <= tol:
                return m
        raise MissingResponseError("no projective measurement registered for the requested state")

    def with_preparations(self, preparations, **metadata):
        merged = dict(self.metadata)
        merged.update(metadata)
        return dataclasses.replace(self, preparations=tuple(preparations), metadata=merged)


@dataclass
class BornReport:
    max_deviation: float = 0.0
    mean_deviation: float = 0.0
    checks: int = 0
    tolerance: float = 0.0
    passed: bool = False
    worst: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "max_deviation": self.max_deviation,
            "mean_deviation": self.mean_deviation,
            "checks": self.checks,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "worst": self.worst,
        }


def _require_shared_space(model, *objects):
    for obj in objects:
        space = obj.space if isinstance(obj, EpistemicState) else obj.epistemic.space
        if not space.same_as(model.space):
            raise SpaceMismatchError("objects do not share the model's ontic space")


def predicted_probability(model, prep, measurement, outcome):
    """sum_i w_i * mu(lambda_i) * xi(k|lambda_i)."""
    response = getattr(measurement, "response", measurement)
    _require_shared_space(model, prep)
    if response.size != model.space.size:
        raise SpaceMismatchError("response function does not match the ontic space")
    k = response.column(outcome)
    mu = prep.epistemic if isinstance(prep, PreparationProcedure) else prep
    return float(np.sum(model.space.weights * mu.density * response.table[:, k]))


def verify_born(model, pairs, tol=BORN_REFERENCE_TOL):
    """Compare predicted outcome probabilities against Tr(rho E_k) for every pair and outcome."""
    report = BornReport(tolerance=tol)
    deviations = []
    for prep, measurement in pairs:
        if isinstance(measurement, str):
            measurement = model.measurement(measurement)
        elif measurement.label not in model.measurements:
            raise MissingResponseError(f"measurement '{measurement.label}' is not registered on the model")
        for outcome, effect in zip(measurement.outcomes, measurement.effects):
            predicted = predicted_probability(model, prep, measurement, outcome)
            expected = born_probability(prep.target, effect)
            deviation = abs(predicted - expected)
            deviations.append(deviation)
            if deviation >= report.max_deviation:
                report.max_deviation = deviation
                report.worst = {
                    "preparation": prep.label,
                    "measurement": measurement.label,
                    "outcome": outcome,
                    "predicted": predicted,
                    "born": expected,
                }
    report.checks = len(deviations)
    report.mean_deviation = float(np.mean(deviations)) if deviations else 0.0
    report.passed = report.max_deviation <= tol
    logger.debug("Born check over %d outcomes: max %.3g, mean %.3g",
                 report.checks, report.max_deviation, report.mean_deviation)
    return report


def scaled_born_tolerance(n, base=BORN_REFERENCE_TOL, base_n=BORN_REFERENCE_N):
    """c / sqrt(N), anchored at 2e-2 for N = 20000."""
    return base * np.sqrt(base_n / float(n))


def sample_born_pairs(model, count, rng):
    """Seeded (pure preparation, measurement) pairs for verify_born."""
    preps = model.pure_preparations()
    labels = sorted(model.measurements)
    candidates = [(p, label) for p in preps for label in labels]
    if not candidates or count <= 0:
        return []
    picks = rng.choice(len(candidates), size=min(count, len(candidates)), replace=False)
    return [(candidates[i][0], model.measurements[candidates[i][1]]) for i in picks]


def support(mu, eps_rel=DEFAULT_SUPPORT_EPS_REL):
    """Indices i with mu_i > eps_rel * max_j mu_j."""
    if eps_rel < 0:
        raise ValueError("eps_rel must be non-negative")
    peak = float(mu.density.max()) if mu.density.size else 0.0
    if peak <= 0:
        raise NormalizationError("support of an all-zero density is undefined")
    return np.flatnonzero(mu.density > eps_rel * peak)


def support_integral(mu, region):
    """sum_{i in region} w_i mu_i."""
    region = np.unique(np.asarray(region, dtype=int).reshape(-1))
    if region.size == 0:
        return 0.0
    if region.min() < 0 or region.max() >= mu.space.size:
        raise OntoscopeError("region index out of range for this ontic space")
    return float(np.dot(mu.space.weights[region], mu.density[region]))


def mixture(parts: Sequence[Tuple[float, EpistemicState]]) -> EpistemicState:
    """Pointwise convex combination sum_j w_j mu_j."""
    if not parts:
        raise ValueError("mixture needs at least one component")
    weights = np.array([w for w, _ in parts], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > MIXTURE_WEIGHT_TOL:
        raise NormalizationError(f"mixture weights must be non-negative and sum to 1 (got {weights.sum():.12g})")
    space = parts[0][1].space
    for _, mu in parts[1:]:
        if not mu.space.same_as(space):
            raise SpaceMismatchError("mixture components live on different ontic spaces")
    density = sum(w * mu.density for w, mu in parts)
    checked = all(mu.check_normalization for _, mu in parts)
    return EpistemicState(space, density, check_normalization=checked)
