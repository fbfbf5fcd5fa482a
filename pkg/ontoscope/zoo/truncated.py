"""
Deliberately non-maximal model for negative controls: mu_psi is zeroed on a
seeded random fraction of the shared support with mu_phi, then renormalized.
The result breaks the Born rule and is flagged ``born_invalid``.
"""

import logging

import numpy as np

from ontoscope.errors import OntoscopeError
from ontoscope.models.ontic import EpistemicState, PreparationProcedure, support
from ontoscope.zoo.states import mixed_preparation

logger = logging.getLogger(__name__)


def build_truncated_epistemic(base, pair, fraction, seed=42):
    """Truncate mu_psi over support(mu_phi) for ``pair = (psi, phi)``.

    ``psi``/``phi`` are QuantumStates or labels understood by
    ``OntologicalModel.state_for_label``.
    """
    if not 0.0 < fraction < 1.0:
        raise OntoscopeError(f"truncation fraction must lie in (0, 1) (got {fraction})")
    psi, phi = (base.state_for_label(s) if isinstance(s, str) else s for s in pair)
    prep_psi = base.preparation_for(psi)
    prep_phi = base.preparation_for(phi)

    mu = prep_psi.epistemic
    region = np.intersect1d(support(prep_phi.epistemic), support(mu))
    count = int(round(fraction * region.size))
    rng = np.random.default_rng(seed)
    removed = rng.choice(region, size=count, replace=False) if count else np.array([], dtype=int)
    values = mu.density.copy()
    values[removed] = 0.0
    truncated = EpistemicState.from_values(mu.space, values)

    replaced = []
    preparations = []
    for prep in base.preparations:
        if prep.is_pure and prep.target.approx_equal(prep_psi.target):
            prep = PreparationProcedure(
                label=prep.label,
                target=prep.target,
                epistemic=truncated,
                context=prep.context,
                decomposition=prep.decomposition,
            )
            replaced.append(prep.label)
        preparations.append(prep)

    # mixtures over a truncated component are re-mixed from the new densities
    by_label = {prep.label: prep for prep in preparations}
    for i, prep in enumerate(preparations):
        if any(label in replaced for _, label in prep.decomposition):
            preparations[i] = mixed_preparation(
                prep.label,
                prep.context,
                [(weight, by_label[label]) for weight, label in prep.decomposition],
                prep.target,
            )

    logger.warning(
        "Truncated %d of %d shared support points of '%s' over '%s'; model is flagged Born-invalid",
        count, region.size, prep_psi.label, prep_phi.label,
    )
    return base.with_preparations(
        preparations,
        kind="truncated-epistemic",
        base_kind=base.metadata.get("kind", ""),
        born_invalid=True,
        truncation={
            "psi": prep_psi.label,
            "phi": prep_phi.label,
            "fraction": fraction,
            "seed": seed,
            "removed_points": count,
            "replaced": replaced,
        },
    )
