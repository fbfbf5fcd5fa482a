"""
Overlap form of maximal psi-epistemicity implies pure-state preparation
noncontextuality: for two procedures of the same |psi>, L_Q = 1, so
L_C = 1 leaves no room for the densities to differ (TV = 1 - L_C).
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from ontoscope.errors import ContextMismatchError, MissingPreparationError
from ontoscope.models.classifier import group_by_target
from ontoscope.models.overlap import classical_fidelity, total_variation
from ontoscope.models.quantum import QuantumState, quantum_overlap

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 2e-2


@dataclass
class Theorem2Report:
    state: str
    procedures: Tuple[str, str]
    l_q: float
    l_c: float
    tv: float
    identity_residual: float
    antecedent: bool
    consequent: bool
    holds: bool
    tolerance: float = DEFAULT_TOLERANCE

    def to_dict(self):
        return {
            "state": self.state,
            "procedures": list(self.procedures),
            "l_q": self.l_q,
            "l_c": self.l_c,
            "tv": self.tv,
            "identity_residual": self.identity_residual,
            "antecedent": self.antecedent,
            "consequent": self.consequent,
            "holds": self.holds,
            "tolerance": self.tolerance,
        }


def identity_residual(mu1, mu2):
    """|TV - (1 - L_C)|; zero up to rounding for normalized densities."""
    return abs(total_variation(mu1, mu2) - (1.0 - classical_fidelity(mu1, mu2)))


def twin_procedures(model, state=None):
    """(state, p1, p2): two procedures for one pure state, the first such state by default."""
    if state is not None:
        procs = model.preparations_for(state)
        procs = [p for p in procs if p.is_pure]
        if len(procs) < 2:
            raise MissingPreparationError(
                f"state '{state.label}' is prepared by {len(procs)} procedure(s); need two"
            )
        return state, procs[0], procs[1]
    for group in group_by_target(model.pure_preparations()):
        if len(group) >= 2:
            first = group[0]
            return QuantumState(first.state.amplitudes, label=first.label), group[0], group[1]
    raise MissingPreparationError("no pure state is prepared by two procedures")


def theorem2_check(model, psi, p1, p2, tol=DEFAULT_TOLERANCE):
    if isinstance(p1, str):
        p1 = model.preparation(p1)
    if isinstance(p2, str):
        p2 = model.preparation(p2)
    rho = psi.density()
    for prep in (p1, p2):
        if not prep.target.approx_equal(rho):
            raise ContextMismatchError(f"procedure '{prep.label}' does not prepare '{psi.label}'")

    l_q = quantum_overlap(psi, psi)
    l_c = classical_fidelity(p1.epistemic, p2.epistemic)
    tv = total_variation(p1.epistemic, p2.epistemic)
    antecedent = l_c >= 1.0 - tol
    consequent = tv <= 2.0 * tol
    report = Theorem2Report(
        state=psi.label,
        procedures=(p1.label, p2.label),
        l_q=l_q,
        l_c=l_c,
        tv=tv,
        identity_residual=abs(tv - (1.0 - l_c)),
        antecedent=antecedent,
        consequent=consequent,
        holds=(not antecedent) or consequent,
        tolerance=tol,
    )
    if not antecedent:
        logger.info("Procedures %s and %s differ (L_C=%.4f); implication holds vacuously",
                    p1.label, p2.label, l_c)
    return report
