"""
Beltrametti-Bugajski qubit model: psi-ontic and outcome indeterministic.

Each registered state is a point mass at the grid point nearest its Bloch
vector; the response is the Born weight of the ontic point itself,
xi(phi|lambda) = (1 + phi.lambda) / 2.
"""

import logging

import numpy as np

from ontoscope.errors import ConfigurationError, OntoscopeError
from ontoscope.models.ontic import EpistemicState, OnticSpace, OntologicalModel, PreparationProcedure
from ontoscope.zoo.states import distinct_states, projective_measurement

logger = logging.getLogger(__name__)

MIN_GRID_SIZE = 100


class BeltramettiBugajskiBuilder:

    def __init__(self, n, states, seed=42, min_grid_size=MIN_GRID_SIZE):
        if n < min_grid_size:
            raise ConfigurationError(f"Beltrametti-Bugajski grid needs N >= {min_grid_size} (got {n})")
        if not states:
            raise ConfigurationError("Beltrametti-Bugajski model needs at least one state")
        self.n = n
        self.states = list(states)
        self.seed = seed
        self.space = OnticSpace.fibonacci_sphere(n)

    def build(self):
        indices = self._snap()
        preparations = tuple(
            PreparationProcedure(
                label=state.label,
                target=state.density(),
                epistemic=EpistemicState.point_mass(self.space, index),
                context="point-mass",
            )
            for state, index in zip(self.states, indices)
        )
        measurements = {}
        for state in distinct_states(self.states):
            plus = 0.5 * (1.0 + self.space.points @ state.bloch_vector())
            m = projective_measurement(state, np.clip(plus, 0.0, 1.0))
            measurements[m.label] = m
        model = OntologicalModel(
            space=self.space,
            preparations=preparations,
            measurements=measurements,
            metadata={
                "kind": "beltrametti-bugajski",
                "grid_size": self.n,
                "seed": self.seed,
                "snapped_indices": [int(i) for i in indices],
            },
        )
        logger.info("Built Beltrametti-Bugajski model: N=%d, %d point masses", self.n, len(preparations))
        return model

    def _snap(self):
        indices = [self.space.nearest_point(state.bloch_vector()) for state in self.states]
        seen = {}
        for state, index in zip(self.states, indices):
            if index in seen:
                logger.warning("States '%s' and '%s' snap to the same grid point %d",
                               seen[index], state.label, index)
                raise OntoscopeError(
                    f"states '{seen[index]}' and '{state.label}' snap to one grid point; "
                    f"increase N (currently {self.n})"
                )
            seen[index] = state.label
        return indices


def build_bb(n, states, seed=42):
    return BeltramettiBugajskiBuilder(n, states, seed=seed).build()
