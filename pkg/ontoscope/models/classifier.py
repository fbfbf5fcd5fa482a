"""
Model classifier.

Sample-based verdicts for the psi-ontic / psi-epistemic split, the two
notions of maximal psi-epistemicity (support-integral form and overlap
form), preparation noncontextuality at pure- and mixed-state level, and
outcome determinism of the registered response functions.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from ontoscope.errors import ContextMismatchError, MissingResponseError, SamplingError
from ontoscope.models.ontic import DEFAULT_SUPPORT_EPS_REL, support
from ontoscope.models.overlap import (
    ORTHOGONALITY_THRESHOLD,
    classical_fidelity,
    degree_of_epistemicity,
    overlap_record,
    total_variation,
)
from ontoscope.models.quantum import overlap_sq

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 2e-2
F_TOLERANCE_FACTOR = 1.5
DEFAULT_PAIR_BUDGET = 200
DEFAULT_COVERAGE_FLOOR = 10
DEFAULT_F_OVERLAP_FLOOR = 0.1
DETERMINISM_TOL = 1e-9


class PsiVerdict(str, Enum):
    PSI_ONTIC = "PsiOntic"
    PSI_EPISTEMIC = "PsiEpistemic"


class TriState(str, Enum):
    YES = "Yes"
    NO = "No"
    UNDETERMINED = "Undetermined"


class ContextualityLevel(str, Enum):
    PURE_STATE = "PureState"
    MIXED_STATE = "MixedState"


@dataclass
class OnticityVerdict:
    verdict: PsiVerdict
    max_classical_fidelity: float = 0.0
    evaluated: int = 0
    witness: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "max_classical_fidelity": self.max_classical_fidelity,
            "evaluated": self.evaluated,
            "witness": self.witness,
        }


@dataclass
class MaxEpistemicVerdict:
    verdict: TriState
    max_deviation: float = 0.0
    evaluated: int = 0
    skipped: int = 0
    tolerance: float = 0.0
    witness: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "max_deviation": self.max_deviation,
            "evaluated": self.evaluated,
            "skipped": self.skipped,
            "tolerance": self.tolerance,
            "witness": self.witness,
        }


@dataclass
class ModelVerdict:
    ontic_or_epistemic: OnticityVerdict
    max_psi_epistemic_1: MaxEpistemicVerdict
    max_psi_epistemic_2: MaxEpistemicVerdict
    sampled_pairs: int = 0
    tolerance: float = DEFAULT_TOLERANCE

    def to_dict(self):
        return {
            "ontic_or_epistemic": self.ontic_or_epistemic.verdict.value,
            "max_psi_epistemic_1": self.max_psi_epistemic_1.verdict.value,
            "max_psi_epistemic_2": self.max_psi_epistemic_2.verdict.value,
            "sampled_pairs": self.sampled_pairs,
            "tolerance": self.tolerance,
            "details": {
                "onticity": self.ontic_or_epistemic.to_dict(),
                "max_psi_epistemic_1": self.max_psi_epistemic_1.to_dict(),
                "max_psi_epistemic_2": self.max_psi_epistemic_2.to_dict(),
            },
        }


@dataclass
class ContextualityVerdict:
    level: ContextualityLevel
    noncontextual: bool
    distance: float = 0.0
    procedures: List[str] = field(default_factory=list)
    witness: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "level": self.level.value,
            "noncontextual": self.noncontextual,
            "distance": self.distance,
            "procedures": self.procedures,
            "witness": self.witness,
        }


@dataclass
class DeterminismVerdict:
    deterministic: bool
    fraction: float
    checked: int = 0

    def to_dict(self):
        return {"deterministic": self.deterministic, "fraction": self.fraction, "checked": self.checked}


@dataclass
class ClassificationReport:
    model_verdict: ModelVerdict
    pure_contextuality: List[ContextualityVerdict] = field(default_factory=list)
    mixed_contextuality: List[ContextualityVerdict] = field(default_factory=list)
    determinism: Optional[DeterminismVerdict] = None
    seed: Optional[int] = None

    @property
    def pure_noncontextual(self):
        return all(v.noncontextual for v in self.pure_contextuality)

    @property
    def mixed_noncontextual(self):
        return all(v.noncontextual for v in self.mixed_contextuality)

    def to_dict(self):
        return {
            "seed": self.seed,
            "verdict": self.model_verdict.to_dict(),
            "pure_state_noncontextual": self.pure_noncontextual,
            "mixed_state_noncontextual": self.mixed_noncontextual,
            "pure_state_checks": [v.to_dict() for v in self.pure_contextuality],
            "mixed_state_checks": [v.to_dict() for v in self.mixed_contextuality],
            "outcome_determinism": self.determinism.to_dict() if self.determinism else None,
        }


def sample_pairs(model, budget, rng):
    """Every unordered pair of pure preparations, in a seeded shuffle, cut to ``budget``."""
    preps = model.pure_preparations()
    pairs = list(itertools.combinations(preps, 2))
    if budget <= 0 or not pairs:
        return []
    order = rng.permutation(len(pairs))
    return [pairs[i] for i in order[:budget]]


def _same_target(p, q):
    return p.target.approx_equal(q.target)


def group_by_target(preparations):
    groups = []
    for prep in preparations:
        for group in groups:
            if _same_target(group[0], prep):
                group.append(prep)
                break
        else:
            groups.append([prep])
    return groups


class ModelClassifier:
    """Sample-based classification of one OntologicalModel."""

    def __init__(self, model, tolerance=DEFAULT_TOLERANCE, f_tolerance=None,
                 pair_budget=DEFAULT_PAIR_BUDGET, seed=42,
                 coverage_floor=DEFAULT_COVERAGE_FLOOR,
                 f_overlap_floor=DEFAULT_F_OVERLAP_FLOOR,
                 orthogonality_threshold=ORTHOGONALITY_THRESHOLD,
                 support_eps_rel=DEFAULT_SUPPORT_EPS_REL):
        self.model = model
        self.tolerance = tolerance
        self.f_tolerance = f_tolerance if f_tolerance is not None else F_TOLERANCE_FACTOR * tolerance
        self.pair_budget = pair_budget
        self.seed = seed
        self.coverage_floor = coverage_floor
        self.f_overlap_floor = f_overlap_floor
        self.orthogonality_threshold = orthogonality_threshold
        self.support_eps_rel = support_eps_rel

    def sample(self):
        return sample_pairs(self.model, self.pair_budget, np.random.default_rng(self.seed))

    def _tri_state(self, violated, evaluated):
        if violated:
            return TriState.NO
        if evaluated < self.coverage_floor:
            return TriState.UNDETERMINED
        return TriState.YES

    def classify_ontic(self, pairs):
        best = None
        evaluated = 0
        for p, q in pairs:
            if _same_target(p, q):
                continue
            if overlap_sq(p.state, q.state) < self.orthogonality_threshold:
                continue
            evaluated += 1
            l_c = classical_fidelity(p.epistemic, q.epistemic)
            if best is None or l_c > best[0]:
                best = (l_c, p.label, q.label)
        if not evaluated:
            raise SamplingError("no non-orthogonal pair of distinct pure states to classify")
        verdict = PsiVerdict.PSI_EPISTEMIC if best[0] > self.tolerance else PsiVerdict.PSI_ONTIC
        return OnticityVerdict(
            verdict=verdict,
            max_classical_fidelity=best[0],
            evaluated=evaluated,
            witness={"pair": [best[1], best[2]], "l_c": best[0]},
        )

    def is_max_epistemic_1(self, pairs):
        """|f(psi, phi) - 1| <= f_tolerance on every well-conditioned pair, both directions."""
        worst = None
        evaluated = skipped = 0
        for p, q in pairs:
            if _same_target(p, q):
                continue
            ov = overlap_sq(p.state, q.state)
            if ov < max(self.f_overlap_floor, self.orthogonality_threshold):
                skipped += 1
                logger.debug("f skipped for (%s, %s): overlap %.3g below floor", p.label, q.label, ov)
                continue
            evaluated += 1
            for a, b in ((p, q), (q, p)):
                degree = degree_of_epistemicity(self.model, a, b, self.orthogonality_threshold,
                                                self.support_eps_rel)
                deviation = abs(degree.value - 1.0)
                if worst is None or deviation > worst[0]:
                    worst = (deviation, a.label, b.label, degree.value)
        if skipped:
            logger.warning("f skipped on %d pair(s) below the overlap floor %.3g",
                           skipped, self.f_overlap_floor)
        max_dev = worst[0] if worst else 0.0
        return MaxEpistemicVerdict(
            verdict=self._tri_state(max_dev > self.f_tolerance, evaluated),
            max_deviation=max_dev,
            evaluated=evaluated,
            skipped=skipped,
            tolerance=self.f_tolerance,
            witness={"pair": [worst[1], worst[2]], "f": worst[3]} if worst else {},
        )

    def is_max_epistemic_2(self, pairs):
        """|L_Q - L_C| <= tolerance on every sampled pair, same-target pairs included."""
        worst = None
        for p, q in pairs:
            record = overlap_record(self.model, p, q)
            deviation = abs(record.deficit)
            if worst is None or deviation > worst[0]:
                worst = (deviation, p.label, q.label, record.l_q, record.l_c)
        max_dev = worst[0] if worst else 0.0
        return MaxEpistemicVerdict(
            verdict=self._tri_state(max_dev > self.tolerance, len(pairs)),
            max_deviation=max_dev,
            evaluated=len(pairs),
            tolerance=self.tolerance,
            witness={"pair": [worst[1], worst[2]], "l_q": worst[3], "l_c": worst[4]} if worst else {},
        )

    def check_preparation_noncontextuality(self, rho, procs, tol=None):
        tol = self.tolerance if tol is None else tol
        for prep in procs:
            if not prep.target.approx_equal(rho):
                raise ContextMismatchError(f"procedure '{prep.label}' does not prepare the given density operator")
        level = ContextualityLevel.PURE_STATE if rho.is_pure() else ContextualityLevel.MIXED_STATE
        worst = (0.0, None, None)
        for p, q in itertools.combinations(procs, 2):
            distance = total_variation(p.epistemic, q.epistemic)
            if worst[1] is None or distance > worst[0]:
                worst = (distance, p.label, q.label)
        witness = {"procedures": [worst[1], worst[2]], "distance": worst[0]} if worst[1] else {}
        return ContextualityVerdict(
            level=level,
            noncontextual=worst[0] <= tol,
            distance=worst[0],
            procedures=[p.label for p in procs],
            witness=witness,
        )

    def check_outcome_determinism(self, tol=DETERMINISM_TOL):
        """Response values within tol of {0, 1} on the union of preparation supports."""
        if not self.model.measurements:
            raise MissingResponseError("model has no registered measurements")
        mask = np.zeros(self.model.space.size, dtype=bool)
        for prep in self.model.preparations:
            mask[support(prep.epistemic, self.support_eps_rel)] = True
        values = np.concatenate([m.response.table[mask].ravel() for m in self.model.measurements.values()])
        crisp = np.minimum(np.abs(values), np.abs(values - 1.0)) <= tol
        fraction = float(np.mean(crisp)) if values.size else 1.0
        return DeterminismVerdict(deterministic=bool(np.all(crisp)), fraction=fraction, checked=int(values.size))

    def contextuality_checks(self, preparations):
        verdicts = []
        for group in group_by_target(preparations):
            if len(group) > 1:
                verdicts.append(self.check_preparation_noncontextuality(group[0].target, group))
        return verdicts

    def classify(self):
        pairs = self.sample()
        logger.info("Classifying model over %d sampled pairs (seed %s)", len(pairs), self.seed)
        verdict = ModelVerdict(
            ontic_or_epistemic=self.classify_ontic(pairs),
            max_psi_epistemic_1=self.is_max_epistemic_1(pairs),
            max_psi_epistemic_2=self.is_max_epistemic_2(pairs),
            sampled_pairs=len(pairs),
            tolerance=self.tolerance,
        )
        return ClassificationReport(
            model_verdict=verdict,
            pure_contextuality=self.contextuality_checks(self.model.pure_preparations()),
            mixed_contextuality=self.contextuality_checks(self.model.mixed_preparations()),
            determinism=self.check_outcome_determinism() if self.model.measurements else None,
            seed=self.seed,
        )
