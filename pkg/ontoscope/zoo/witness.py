"""
Finite witness for the trine decompositions of I/2: pure-state contextual,
mixed-state noncontextual.

Six abstract ontic points with unit weights and nu = 1/6 everywhere. In its
own context P_t, A_t^+ is uniform on a 3-subset S_t and A_t^- on the
complement; in P4/P5 the same states carry the flat density 1/6.
"""

import logging

import numpy as np

from ontoscope.models.ontic import EpistemicState, OnticSpace, OntologicalModel, PreparationProcedure
from ontoscope.zoo.states import (
    MINUS_CONTEXT,
    PLUS_CONTEXT,
    TRINE_CONTEXTS,
    maximally_mixed_procedures,
    trine_label,
    trine_states,
)

logger = logging.getLogger(__name__)

WITNESS_POINTS = 6
WITNESS_SUBSETS = {1: (0, 1, 2), 2: (2, 3, 4), 3: (4, 5, 0)}


def assemble_trine_model(space, own, plus_extra, minus_extra, metadata=None):
    """Model with A_t^+/- registered in P_t and again in P4 (plus) / P5 (minus).

    ``own`` maps t to the (plus, minus) density arrays in context P_t;
    ``plus_extra`` and ``minus_extra`` map t to the density of A_t^+ in P4
    and of A_t^- in P5. The five I/2 procedures are derived by mixing.
    """
    preps = {}
    for t, (plus, minus) in trine_states().items():
        context = TRINE_CONTEXTS[t - 1]
        placements = (
            (+1, plus, context, own[t][0]),
            (-1, minus, context, own[t][1]),
            (+1, plus, PLUS_CONTEXT, plus_extra[t]),
            (-1, minus, MINUS_CONTEXT, minus_extra[t]),
        )
        for sign, state, ctx, density in placements:
            preps[(t, sign, ctx)] = PreparationProcedure(
                label=trine_label(state, ctx),
                target=state.density(),
                epistemic=EpistemicState(space, np.clip(np.asarray(density, dtype=float), 0.0, None)),
                context=ctx,
            )
    ordered = sorted(preps.items(), key=lambda item: (item[0][2], item[0][0], -item[0][1]))
    pure = [prep for _, prep in ordered]
    mixed = maximally_mixed_procedures({}, preps)
    return OntologicalModel(space=space, preparations=tuple(pure + mixed), metadata=dict(metadata or {}))


def build_theorem3_witness():
    space = OnticSpace.abstract(WITNESS_POINTS)
    own = {}
    for t, subset in WITNESS_SUBSETS.items():
        plus = np.zeros(WITNESS_POINTS)
        plus[list(subset)] = 1.0 / 3.0
        minus = np.where(plus > 0, 0.0, 1.0 / 3.0)
        own[t] = (plus, minus)
    flat = np.full(WITNESS_POINTS, 1.0 / WITNESS_POINTS)
    model = assemble_trine_model(
        space,
        own,
        plus_extra={t: flat for t in WITNESS_SUBSETS},
        minus_extra={t: flat for t in WITNESS_SUBSETS},
        metadata={"kind": "theorem3-witness", "grid_size": WITNESS_POINTS},
    )
    logger.info("Built trine witness model on %d abstract points", WITNESS_POINTS)
    return model
