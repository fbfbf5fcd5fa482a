from ontoscope.models.quantum import QuantumState, DensityOperator, Effect, QubitObservable
from ontoscope.models.ontic import (
    OnticSpace,
    EpistemicState,
    ResponseFunction,
    Measurement,
    PreparationProcedure,
    OntologicalModel,
)
from ontoscope.models.classifier import ModelClassifier
from ontoscope.models.run_config import RunConfig

__all__ = [
    "QuantumState",
    "DensityOperator",
    "Effect",
    "QubitObservable",
    "OnticSpace",
    "EpistemicState",
    "ResponseFunction",
    "Measurement",
    "PreparationProcedure",
    "OntologicalModel",
    "ModelClassifier",
    "RunConfig",
]
