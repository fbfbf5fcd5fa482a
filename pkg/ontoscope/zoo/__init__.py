"""
Concrete ontological models and the dispatcher that builds them from a spec.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from ontoscope.errors import ConfigurationError
from ontoscope.utils.sampling import stream_rng
from ontoscope.zoo.beltrametti_bugajski import build_bb
from ontoscope.zoo.kochen_specker import build_ks
from ontoscope.zoo.states import haar_states
from ontoscope.zoo.truncated import build_truncated_epistemic
from ontoscope.zoo.witness import assemble_trine_model, build_theorem3_witness

ZOO_KINDS = {
    "ks": "KochenSpecker",
    "bb": "BeltramettiBugajski",
    "witness": "Theorem3Witness",
    "truncated": "TruncatedEpistemic",
}

MIN_SPHERE_GRID = 100


@dataclass
class ZooModelSpec:
    kind: str
    grid_size: int = 20000
    seed: int = 42
    random_state_count: int = 12
    state_count: int = 8
    pair: Tuple[str, str] = ("+", "0")
    fraction: float = 0.5
    min_grid_size: int = MIN_SPHERE_GRID

    def validate(self):
        errors = []
        if self.kind not in ZOO_KINDS:
            errors.append(f"unknown model kind '{self.kind}' (expected one of {', '.join(ZOO_KINDS)})")
        elif self.kind != "witness" and self.grid_size < self.min_grid_size:
            errors.append(f"grid_size must be >= {self.min_grid_size} for sphere models")
        if self.kind == "bb" and self.state_count < 1:
            errors.append("state_count must be at least 1")
        if self.kind == "truncated" and not 0.0 < self.fraction < 1.0:
            errors.append("fraction must lie in (0, 1)")
        return errors


def build_zoo_model(spec: ZooModelSpec, base: Optional[object] = None):
    """Build the model described by ``spec``; ``base`` overrides the KS base of a truncation."""
    errors = spec.validate()
    if errors:
        raise ConfigurationError("; ".join(errors))
    if spec.kind == "ks":
        return build_ks(spec.grid_size, seed=spec.seed, random_state_count=spec.random_state_count)
    if spec.kind == "bb":
        states = haar_states(stream_rng(spec.seed, "states"), spec.state_count)
        return build_bb(spec.grid_size, states, seed=spec.seed)
    if spec.kind == "witness":
        return build_theorem3_witness()
    if base is None:
        base = build_ks(spec.grid_size, seed=spec.seed, random_state_count=spec.random_state_count)
    return build_truncated_epistemic(base, spec.pair, spec.fraction, seed=spec.seed)


__all__ = [
    "ZooModelSpec",
    "ZOO_KINDS",
    "build_zoo_model",
    "build_ks",
    "build_bb",
    "build_theorem3_witness",
    "build_truncated_epistemic",
    "assemble_trine_model",
]
