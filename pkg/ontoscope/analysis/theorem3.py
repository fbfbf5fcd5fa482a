"""
Trine decompositions of I/2: exact sign-pattern enumeration.

Write nu for the common density of the five I/2 procedures at some ontic
point with nu > 0. Disjointness of A_t^+ and A_t^- within context P_t,
together with mu_t^+ + mu_t^- = 2 nu, puts all the weight of context t on one
sign. The three P4 (P5) components must then add up to 3 nu, which no choice
of signs reaches: the available sums are 0, 2, 4 or 6 times nu.

Dropping either noncontextuality level removes the contradiction; those
modes return a concrete witness model instead.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from ontoscope.errors import ConfigurationError
from ontoscope.models.overlap import total_variation
from ontoscope.zoo.kochen_specker import build_ks
from ontoscope.zoo.states import MINUS_CONTEXT, PLUS_CONTEXT, TRINE_CONTEXTS, trine_label, trine_states
from ontoscope.zoo.witness import build_theorem3_witness

logger = logging.getLogger(__name__)

REQUIRED_SUM = Fraction(3)
CONTEXT_WEIGHT = Fraction(2)
SIGN_PATTERNS = tuple("".join(p) for p in itertools.product("+-", repeat=3))


class Theorem3Mode(str, Enum):
    BOTH_NONCONTEXTUAL = "BothNoncontextual"
    PURE_CONTEXTUAL_ALLOWED = "PureContextualAllowed"
    MIXED_CONTEXTUAL_ALLOWED = "MixedContextualAllowed"


MODE_ALIASES = {
    "both-nc": Theorem3Mode.BOTH_NONCONTEXTUAL,
    "pure-ctx": Theorem3Mode.PURE_CONTEXTUAL_ALLOWED,
    "mixed-ctx": Theorem3Mode.MIXED_CONTEXTUAL_ALLOWED,
}


def parse_mode(value):
    if isinstance(value, Theorem3Mode):
        return value
    if value in MODE_ALIASES:
        return MODE_ALIASES[value]
    try:
        return Theorem3Mode(value)
    except ValueError:
        raise ConfigurationError(
            f"unknown mode '{value}' (expected one of {', '.join(MODE_ALIASES)})"
        ) from None


def _as_number(value):
    return int(value) if value.denominator == 1 else str(value)


@dataclass
class PatternRow:
    """One sign assignment s_t, with the P4 and P5 sums in units of nu."""
    pattern: str
    plus_sum: Fraction
    minus_sum: Fraction

    @property
    def attains_required(self):
        return self.plus_sum == REQUIRED_SUM and self.minus_sum == REQUIRED_SUM

    def to_dict(self):
        return {
            "pattern": self.pattern,
            "plus_sum": _as_number(self.plus_sum),
            "minus_sum": _as_number(self.minus_sum),
            "attains_required": self.attains_required,
        }


@dataclass
class FeasibilityCertificate:
    mode: Theorem3Mode
    feasible: bool
    per_pattern_sums: List[PatternRow] = field(default_factory=list)
    required: Fraction = REQUIRED_SUM
    witness_model: Optional[object] = None
    source: str = "enumeration"
    residuals: Dict[str, float] = field(default_factory=dict)
    pure_distance: Optional[float] = None
    mixed_distance: Optional[float] = None
    points: Optional[int] = None
    patterns_tried: int = 0
    witness_patterns: List[str] = field(default_factory=list)
    solver_residual: Optional[float] = None

    def to_dict(self):
        witness = None
        if self.witness_model is not None:
            witness = {
                "kind": self.witness_model.metadata.get("kind", ""),
                "points": self.witness_model.space.size,
                "preparations": len(self.witness_model.preparations),
            }
        return {
            "mode": self.mode.value,
            "feasible": self.feasible,
            "source": self.source,
            "required": _as_number(self.required),
            "per_pattern_sums": [row.to_dict() for row in self.per_pattern_sums],
            "points": self.points,
            "patterns_tried": self.patterns_tried,
            "witness_patterns": self.witness_patterns,
            "solver_residual": self.solver_residual,
            "residuals": self.residuals,
            "pure_distance": self.pure_distance,
            "mixed_distance": self.mixed_distance,
            "witness": witness,
        }


def pattern_table():
    """Exact P4/P5 sums for each of the eight sign patterns."""
    rows = []
    for pattern in SIGN_PATTERNS:
        plus = sum((CONTEXT_WEIGHT for s in pattern if s == "+"), Fraction(0))
        minus = sum((CONTEXT_WEIGHT for s in pattern if s == "-"), Fraction(0))
        rows.append(PatternRow(pattern=pattern, plus_sum=plus, minus_sum=minus))
    return rows


def _trine_labels():
    labels = {}
    for t, (plus, minus) in trine_states().items():
        own = TRINE_CONTEXTS[t - 1]
        labels[t] = {
            "plus": trine_label(plus, own),
            "minus": trine_label(minus, own),
            "plus_extra": trine_label(plus, PLUS_CONTEXT),
            "minus_extra": trine_label(minus, MINUS_CONTEXT),
        }
    return labels


def _requires_mixed_noncontextuality(mode):
    return mode is not Theorem3Mode.MIXED_CONTEXTUAL_ALLOWED


def _requires_pure_noncontextuality(mode):
    return mode is not Theorem3Mode.PURE_CONTEXTUAL_ALLOWED


def witness_residuals(model, mode=Theorem3Mode.BOTH_NONCONTEXTUAL):
    """Constraint residuals and the pure/mixed distances of a trine model.

    ``disjoint``: max_t sum_lambda w mu_t^+ mu_t^- in the own contexts.
    When ``mode`` keeps mixed-state noncontextuality, nu is the mean of the
    five I/2 densities and
    ``eq_context`` = max |mu_t^+ + mu_t^- - 2 nu|,
    ``eq_plus`` / ``eq_minus`` = max |sum_t mu_t - 3 nu| in P4 / P5.
    When it keeps pure-state noncontextuality, ``pure_context`` is the largest
    pointwise gap between a trine state's own-context and P4/P5 densities.
    """
    mode = parse_mode(mode)
    weights = model.space.weights

    def density(label):
        return model.preparation(label).epistemic.density

    labels = _trine_labels()
    residuals = {
        "disjoint": max(
            float(np.sum(weights * density(lab["plus"]) * density(lab["minus"])))
            for lab in labels.values()
        ),
    }
    if _requires_mixed_noncontextuality(mode):
        contexts = TRINE_CONTEXTS + (PLUS_CONTEXT, MINUS_CONTEXT)
        nu = np.mean([density(f"I/2@{ctx}") for ctx in contexts], axis=0)
        residuals["eq_context"] = max(
            float(np.max(np.abs(density(lab["plus"]) + density(lab["minus"]) - 2.0 * nu)))
            for lab in labels.values()
        )
        residuals["eq_plus"] = float(np.max(np.abs(
            sum(density(lab["plus_extra"]) for lab in labels.values()) - 3.0 * nu)))
        residuals["eq_minus"] = float(np.max(np.abs(
            sum(density(lab["minus_extra"]) for lab in labels.values()) - 3.0 * nu)))
    if _requires_pure_noncontextuality(mode):
        residuals["pure_context"] = max(
            float(np.max(np.abs(density(lab[own]) - density(lab[extra]))))
            for lab in labels.values()
            for own, extra in (("plus", "plus_extra"), ("minus", "minus_extra"))
        )

    pure_distance = max(
        total_variation(model.preparation(lab[own]).epistemic, model.preparation(lab[extra]).epistemic)
        for lab in labels.values()
        for own, extra in (("plus", "plus_extra"), ("minus", "minus_extra"))
    )
    mixed = [p for p in model.mixed_preparations() if p.label.startswith("I/2@")]
    mixed_distance = max(
        (total_variation(a.epistemic, b.epistemic) for a, b in itertools.combinations(mixed, 2)),
        default=0.0,
    )
    return residuals, pure_distance, mixed_distance


def certify_witness(certificate, model):
    residuals, pure, mixed = witness_residuals(model, certificate.mode)
    certificate.witness_model = model
    certificate.residuals = residuals
    certificate.pure_distance = pure
    certificate.mixed_distance = mixed
    return certificate


def theorem3_enumerate(mode, ks_grid=2500):
    mode = parse_mode(mode)
    table = pattern_table()
    if mode is Theorem3Mode.BOTH_NONCONTEXTUAL:
        feasible = any(row.attains_required for row in table)
        logger.info("Sign-pattern enumeration: %d patterns, feasible=%s", len(table), feasible)
        return FeasibilityCertificate(mode=mode, feasible=feasible, per_pattern_sums=table)

    certificate = FeasibilityCertificate(mode=mode, feasible=True, per_pattern_sums=table)
    if mode is Theorem3Mode.PURE_CONTEXTUAL_ALLOWED:
        model = build_theorem3_witness()
    else:
        model = build_ks(ks_grid, random_state_count=0)
    certificate.points = model.space.size
    return certify_witness(certificate, model)
