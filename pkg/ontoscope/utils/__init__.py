from ontoscope.utils.validators import validate_model_document
from ontoscope.utils.sampling import stream_rng

__all__ = [
    "validate_model_document",
    "stream_rng",
]
