"""
Kochen-Specker qubit model on a spherical Fibonacci grid.

mu_psi(lambda) = (1/pi) max(0, psi.lambda), discretely renormalized, and
xi(phi|lambda) = 1 when phi.lambda >= 0 (the equator goes to the positive
outcome). The model is psi-epistemic, outcome deterministic and reproduces
qubit statistics up to quadrature error.
"""

import logging

import numpy as np

from ontoscope.errors import ConfigurationError
from ontoscope.models.ontic import EpistemicState, OnticSpace, OntologicalModel, PreparationProcedure
from ontoscope.zoo.states import (
    MINUS_CONTEXT,
    PLUS_CONTEXT,
    TRINE_CONTEXTS,
    basis_states,
    distinct_states,
    haar_states,
    maximally_mixed_procedures,
    projective_measurement,
    trine_label,
    trine_states,
)

logger = logging.getLogger(__name__)

MIN_GRID_SIZE = 100


class KochenSpeckerBuilder:
    """Registers basis, trine and Haar states, the I/2 decompositions and one
    projective measurement per distinct pure state."""

    def __init__(self, n, seed=42, random_state_count=12, min_grid_size=MIN_GRID_SIZE):
        if n < min_grid_size:
            raise ConfigurationError(f"Kochen-Specker grid needs N >= {min_grid_size} (got {n})")
        self.n = n
        self.seed = seed
        self.random_state_count = random_state_count
        self.space = OnticSpace.fibonacci_sphere(n)
        self._densities = {}
        self._states = []

    def build(self):
        basis = self._basis_preparations()
        trine = self._trine_preparations()
        haar = self._haar_preparations()
        pure = list(basis.values()) + list(trine.values()) + haar
        mixed = maximally_mixed_procedures(basis, trine)
        model = OntologicalModel(
            space=self.space,
            preparations=tuple(pure + mixed),
            measurements=self._measurements(),
            metadata={
                "kind": "kochen-specker",
                "grid_size": self.n,
                "seed": self.seed,
                "random_state_count": self.random_state_count,
            },
        )
        logger.info("Built Kochen-Specker model: N=%d, %d preparations, %d measurements",
                    self.n, len(model.preparations), len(model.measurements))
        return model

    def density(self, state):
        """Cosine cap around the Bloch vector; procedures for the same state share it."""
        bloch = state.bloch_vector()
        key = tuple(np.round(bloch, 12))
        if key not in self._densities:
            raw = np.maximum(0.0, self.space.points @ bloch) / np.pi
            self._densities[key] = EpistemicState.from_values(self.space, raw)
        return self._densities[key]

    def response(self, state):
        return (self.space.points @ state.bloch_vector() >= 0.0).astype(float)

    def _pure(self, label, state, context):
        self._states.append(state)
        return PreparationProcedure(
            label=label,
            target=state.density(),
            epistemic=self.density(state),
            context=context,
        )

    def _basis_preparations(self):
        return {state.label: self._pure(state.label, state, context) for context, state in basis_states()}

    def _trine_preparations(self):
        """A_t^+/- in their own context P_t, and again in P4 (plus) or P5 (minus)."""
        preps = {}
        for t, (plus, minus) in trine_states().items():
            own = TRINE_CONTEXTS[t - 1]
            for sign, state, extra in ((+1, plus, PLUS_CONTEXT), (-1, minus, MINUS_CONTEXT)):
                for context in (own, extra):
                    preps[(t, sign, context)] = self._pure(trine_label(state, context), state, context)
        return preps

    def _haar_preparations(self):
        rng = np.random.default_rng(self.seed)
        return [self._pure(s.label, s, "haar") for s in haar_states(rng, self.random_state_count)]

    def _measurements(self):
        measurements = {}
        for state in distinct_states(self._states):
            m = projective_measurement(state, self.response(state))
            measurements[m.label] = m
        return measurements


def build_ks(n, seed=42, random_state_count=12):
    return KochenSpeckerBuilder(n, seed=seed, random_state_count=random_state_count).build()
