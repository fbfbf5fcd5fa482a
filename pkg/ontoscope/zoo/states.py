"""
The pure states every zoo model registers (the six qubit basis states, the
trine eigenstates A_t^+/- and a seeded batch of Haar-random states), plus the
small helpers the builders share for projective measurements and mixed
preparation procedures.
"""

import numpy as np

from ontoscope.models.ontic import Measurement, PreparationProcedure, ResponseFunction, mixture
from ontoscope.models.quantum import (
    DensityOperator,
    QuantumState,
    haar_random_state,
    same_state,
    trine_observables,
)

BASIS_CONTEXTS = {
    "Z": ("0", "1"),
    "X": ("+", "-"),
    "Y": ("+i", "-i"),
}

TRINE_CONTEXTS = ("P1", "P2", "P3")
PLUS_CONTEXT = "P4"
MINUS_CONTEXT = "P5"


def basis_states():
    """(context, state) for 0, 1, +, -, +i, -i."""
    return [
        (context, QuantumState.from_label(label))
        for context, labels in BASIS_CONTEXTS.items()
        for label in labels
    ]


def trine_states():
    """{t: (A_t^+, A_t^-)} for t = 1, 2, 3."""
    return {
        t + 1: (obs.eigenstate(+1), obs.eigenstate(-1))
        for t, obs in enumerate(trine_observables())
    }


def haar_states(rng, count):
    return [haar_random_state(rng, 2, label=f"h{i:02d}") for i in range(count)]


def trine_label(state, context):
    return f"{state.label}@{context}"


def distinct_states(states):
    """Drop states equal (up to phase) to an earlier one, keeping order."""
    kept = []
    for state in states:
        if not any(same_state(state, k) for k in kept):
            kept.append(state)
    return kept


def projective_measurement(state, plus_column):
    """Two-outcome measurement {Pi_psi, I - Pi_psi} with outcomes (label, label_perp)."""
    plus_column = np.asarray(plus_column, dtype=float)
    effect = state.projector()
    response = ResponseFunction(
        np.column_stack([plus_column, 1.0 - plus_column]),
        (state.label, f"{state.label}_perp"),
    )
    return Measurement(f"M[{state.label}]", (effect, effect.complement()), response)


def mixed_preparation(label, context, components, target=None):
    """Procedure for the convex mixture of registered procedures: [(weight, prep), ...]."""
    weights = [w for w, _ in components]
    if target is None:
        target = DensityOperator.mix(weights, [p.target for _, p in components])
    return PreparationProcedure(
        label=label,
        target=target,
        epistemic=mixture([(w, p.epistemic) for w, p in components]),
        context=context,
        decomposition=tuple((w, p.label) for w, p in components),
    )


def maximally_mixed_procedures(basis_preps, trine_preps):
    """I/2 via the Z, X, Y bases and via the five trine decompositions P1..P5.

    ``basis_preps`` maps state label to procedure; ``trine_preps`` maps
    (t, sign, context) to procedure.
    """
    target = DensityOperator.maximally_mixed(2)
    procedures = []
    for context, (a, b) in BASIS_CONTEXTS.items():
        if a in basis_preps and b in basis_preps:
            procedures.append(mixed_preparation(
                f"I/2@{context}", context,
                [(0.5, basis_preps[a]), (0.5, basis_preps[b])], target,
            ))
    for t, context in enumerate(TRINE_CONTEXTS, start=1):
        procedures.append(mixed_preparation(
            f"I/2@{context}", context,
            [(0.5, trine_preps[(t, +1, context)]), (0.5, trine_preps[(t, -1, context)])], target,
        ))
    third = 1.0 / 3.0
    for sign, context in ((+1, PLUS_CONTEXT), (-1, MINUS_CONTEXT)):
        procedures.append(mixed_preparation(
            f"I/2@{context}", context,
            [(third, trine_preps[(t, sign, context)]) for t in (1, 2, 3)], target,
        ))
    return procedures
