"""
Support-integral identity for two bases of a qubit.

With P = I/2 prepared as the (chi, chi_perp) mixture and P' as the
(eta, eta_perp) mixture, mixed-state noncontextuality forces the four support
integrals of mu_chi and mu_chi_perp over Lambda_eta and Lambda_eta_perp to add
up to 2. Rewriting each integral as f * |<.|.>|^2 shows that every f equals 1,
i.e. the model is maximally psi-epistemic in the support-integral sense.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ontoscope.errors import UndefinedEpistemicityError
from ontoscope.models.ontic import DEFAULT_SUPPORT_EPS_REL, support, support_integral
from ontoscope.models.overlap import ORTHOGONALITY_THRESHOLD, EpistemicityDegree, total_variation
from ontoscope.models.quantum import overlap_sq
from ontoscope.zoo.states import mixed_preparation

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 3e-2
TARGET_SUM = 2.0


@dataclass
class Theorem1Report:
    bases: Tuple[Tuple[str, str], Tuple[str, str]]
    integrals: Dict[str, float]
    support_sum: float
    f_values: List[Optional[EpistemicityDegree]]
    rewritten_sum: Optional[float]
    mixed_support_integral: float
    mixed_distance: float
    conclusion: bool
    tolerance: float = DEFAULT_TOLERANCE
    procedures: Tuple[str, str] = ("", "")
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        (chi, chi_perp), (eta, eta_perp) = self.bases
        return {
            "bases": {"chi": [chi, chi_perp], "eta": [eta, eta_perp]},
            "procedures": list(self.procedures),
            "integrals": self.integrals,
            "support_sum": self.support_sum,
            "target": TARGET_SUM,
            "f_values": [
                {"pair": [d.pair[0].label, d.pair[1].label], "f": d.value} if d else None
                for d in self.f_values
            ],
            "rewritten_sum": self.rewritten_sum,
            "mixed_support_integral": self.mixed_support_integral,
            "mixed_distance": self.mixed_distance,
            "conclusion": self.conclusion,
            "tolerance": self.tolerance,
            "notes": self.notes,
        }


def find_basis_mixture(model, a, b):
    """The registered equal-weight mixture of procedures for a and b, or one built on the fly."""
    prep_a = model.preparation_for(a)
    prep_b = model.preparation_for(b)
    for prep in model.mixed_preparations():
        if len(prep.decomposition) != 2:
            continue
        parts = [model.preparation(label) for _, label in prep.decomposition]
        weights = [w for w, _ in prep.decomposition]
        if abs(weights[0] - 0.5) > 1e-9 or abs(weights[1] - 0.5) > 1e-9:
            continue
        matches_a = any(p.target.approx_equal(prep_a.target) for p in parts)
        matches_b = any(p.target.approx_equal(prep_b.target) for p in parts)
        if matches_a and matches_b and not parts[0].target.approx_equal(parts[1].target):
            return prep
    label = f"I/2@{{{prep_a.label},{prep_b.label}}}"
    logger.debug("No registered mixture for (%s, %s); mixing on the fly", prep_a.label, prep_b.label)
    return mixed_preparation(label, "derived", [(0.5, prep_a), (0.5, prep_b)])


def theorem1_check(model, chi, eta, tol=DEFAULT_TOLERANCE,
                   orthogonality_threshold=ORTHOGONALITY_THRESHOLD,
                   eps_rel=DEFAULT_SUPPORT_EPS_REL):
    if overlap_sq(chi, eta) < orthogonality_threshold:
        raise UndefinedEpistemicityError(
            f"chi='{chi.label}' and eta='{eta.label}' are orthogonal; f(chi, eta) is undefined"
        )
    chi_perp, eta_perp = chi.orthogonal(), eta.orthogonal()
    states = {"chi": chi, "chi_perp": chi_perp, "eta": eta, "eta_perp": eta_perp}
    preps = {key: model.preparation_for(state) for key, state in states.items()}
    regions = {key: support(preps[key].epistemic, eps_rel) for key in ("eta", "eta_perp")}

    integrals = {}
    f_values = []
    notes = []
    for src in ("chi", "chi_perp"):
        for dst in ("eta", "eta_perp"):
            value = support_integral(preps[src].epistemic, regions[dst])
            integrals[f"{src}|{dst}"] = value
            ov = overlap_sq(states[src], states[dst])
            if ov < orthogonality_threshold:
                f_values.append(None)
                notes.append(f"f({src}, {dst}) undefined: orthogonal pair")
            else:
                f_values.append(EpistemicityDegree(value=value / ov, pair=(states[src], states[dst]),
                                                   support_integral=value, overlap_sq=ov))
    support_sum = sum(integrals.values())
    defined = [d for d in f_values if d is not None]
    rewritten = sum(d.value * d.overlap_sq for d in defined) if len(defined) == 4 else None

    mixed_p = find_basis_mixture(model, chi, chi_perp)
    mixed_q = find_basis_mixture(model, eta, eta_perp)
    mixed_support = support_integral(mixed_p.epistemic, support(mixed_q.epistemic, eps_rel))

    conclusion = abs(support_sum - TARGET_SUM) <= tol and all(abs(d.value - 1.0) <= tol for d in defined)
    logger.info("Support-integral identity for (%s, %s): sum=%.6f, conclusion=%s",
                chi.label, eta.label, support_sum, conclusion)
    return Theorem1Report(
        bases=((chi.label, chi_perp.label), (eta.label, eta_perp.label)),
        integrals=integrals,
        support_sum=support_sum,
        f_values=f_values,
        rewritten_sum=rewritten,
        mixed_support_integral=mixed_support,
        mixed_distance=total_variation(mixed_p.epistemic, mixed_q.epistemic),
        conclusion=conclusion,
        tolerance=tol,
        procedures=(mixed_p.label, mixed_q.label),
        notes=notes,
    )
