"""
Overlap quantities linking the Hilbert-space and ontic-space descriptions:
quantum overlap L_Q, classical fidelity L_C, total variation, and the
degree of epistemicity f(psi, phi).
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ontoscope.errors import SpaceMismatchError, UndefinedEpistemicityError
from ontoscope.models.ontic import DEFAULT_SUPPORT_EPS_REL, PreparationProcedure, support, support_integral
from ontoscope.models.quantum import QuantumState, overlap_sq, quantum_overlap

logger = logging.getLogger(__name__)

ORTHOGONALITY_THRESHOLD = 1e-8


@dataclass
class OverlapRecord:
    state_pair: Tuple[QuantumState, QuantumState]
    l_q: float
    l_c: float
    deficit: float
    overlap_sq: float = 0.0

    def to_dict(self):
        a, b = self.state_pair
        return {
            "pair": [a.label, b.label],
            "overlap_sq": self.overlap_sq,
            "l_q": self.l_q,
            "l_c": self.l_c,
            "deficit": self.deficit,
        }


@dataclass
class EpistemicityDegree:
    value: float
    pair: Tuple[QuantumState, QuantumState]
    support_integral: float = 0.0
    overlap_sq: float = 0.0

    def to_dict(self):
        return {
            "pair": [self.pair[0].label, self.pair[1].label],
            "f": self.value,
            "support_integral": self.support_integral,
            "overlap_sq": self.overlap_sq,
        }


def _require_shared(mu1, mu2):
    if not mu1.space.same_as(mu2.space):
        raise SpaceMismatchError("epistemic states live on different ontic spaces")


def classical_fidelity(mu1, mu2):
    """L_C = sum_i w_i min(mu1_i, mu2_i)."""
    _require_shared(mu1, mu2)
    value = float(np.dot(mu1.space.weights, np.minimum(mu1.density, mu2.density)))
    return min(1.0, max(0.0, value))


def total_variation(mu1, mu2):
    """(1/2) sum_i w_i |mu1_i - mu2_i|."""
    _require_shared(mu1, mu2)
    return 0.5 * float(np.dot(mu1.space.weights, np.abs(mu1.density - mu2.density)))


def _resolve(model, item):
    """(state, procedure) for a QuantumState or a concrete PreparationProcedure."""
    if isinstance(item, PreparationProcedure):
        return QuantumState(item.state.amplitudes, label=item.label), item
    return item, model.preparation_for(item)


def degree_of_epistemicity(model, psi, phi, threshold=ORTHOGONALITY_THRESHOLD,
                           eps_rel=DEFAULT_SUPPORT_EPS_REL):
    """support_integral(mu_psi, support(mu_phi)) / |<psi|phi>|^2.

    ``psi`` and ``phi`` are states looked up on the model, or procedures
    taken as given.
    """
    psi, prep_psi = _resolve(model, psi)
    phi, prep_phi = _resolve(model, phi)
    ov = overlap_sq(psi, phi)
    if ov < threshold:
        raise UndefinedEpistemicityError(
            f"f({psi.label}, {phi.label}) undefined for orthogonal states (|<psi|phi>|^2 = {ov:.3g})"
        )
    integral = support_integral(prep_psi.epistemic, support(prep_phi.epistemic, eps_rel))
    return EpistemicityDegree(value=integral / ov, pair=(psi, phi),
                              support_integral=integral, overlap_sq=ov)


def overlap_record(model, a, b):
    a, prep_a = _resolve(model, a)
    b, prep_b = _resolve(model, b)
    l_q = quantum_overlap(a, b)
    l_c = classical_fidelity(prep_a.epistemic, prep_b.epistemic)
    return OverlapRecord(state_pair=(a, b), l_q=l_q, l_c=l_c, deficit=l_q - l_c,
                         overlap_sq=overlap_sq(a, b))
