"""
JSON model documents (schema version "1").

Floats are written with Python's shortest round-trip repr, so
``load_model(save_model(model))`` reproduces every array bit-exactly.
Complex matrices are stored as nested [re, im] pairs.
"""

import json
import logging

import numpy as np

from ontoscope.errors import OntoscopeError, SchemaError
from ontoscope.models.ontic import (
    EpistemicState,
    Measurement,
    OnticSpace,
    OntologicalModel,
    PreparationProcedure,
    ResponseFunction,
)
from ontoscope.models.quantum import DensityOperator, Effect
from ontoscope.utils.validators import SCHEMA_VERSION, validate_model_document

logger = logging.getLogger(__name__)


def _matrix_to_pairs(matrix):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def _pairs_to_matrix(pairs):
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def model_to_document(model):
    space = model.space
    space_doc = {"kind": space.kind, "size": space.size}
    space_doc["points"] = space.points.tolist()
    space_doc["weights"] = space.weights.tolist()
    return {
        "schema_version": SCHEMA_VERSION,
        "metadata": model.metadata,
        "space": space_doc,
        "preparations": [
            {
                "label": prep.label,
                "target": _matrix_to_pairs(prep.target.matrix),
                "density": prep.epistemic.density.tolist(),
                "context": prep.context,
                "decomposition": [[w, label] for w, label in prep.decomposition],
            }
            for prep in model.preparations
        ],
        "measurements": [
            {
                "label": m.label,
                "outcomes": list(m.outcomes),
                "effects": [_matrix_to_pairs(e.matrix) for e in m.effects],
                "response": m.response.table.tolist(),
            }
            for m in model.measurements.values()
        ],
    }


def model_from_document(doc):
    errors = validate_model_document(doc)
    if errors:
        raise SchemaError(errors)
    path = "space"
    try:
        s = doc["space"]
        space = OnticSpace(s["kind"], np.asarray(s.get("points", range(s["size"]))), np.asarray(s["weights"]))
        preparations = []
        for i, p in enumerate(doc["preparations"]):
            path = f"preparations[{i}]"
            preparations.append(PreparationProcedure(
                label=p["label"],
                target=DensityOperator(_pairs_to_matrix(p["target"])),
                epistemic=EpistemicState(space, np.asarray(p["density"], dtype=float)),
                context=p.get("context", ""),
                decomposition=tuple((w, label) for w, label in p.get("decomposition") or []),
            ))
        measurements = {}
        for i, m in enumerate(doc.get("measurements", [])):
            path = f"measurements[{i}]"
            response = ResponseFunction(np.asarray(m["response"], dtype=float), tuple(m["outcomes"]))
            effects = tuple(Effect(_pairs_to_matrix(e)) for e in m["effects"])
            measurements[m["label"]] = Measurement(m["label"], effects, response)
        path = "document"
        return OntologicalModel(space, tuple(preparations), measurements, doc.get("metadata", {}))
    except OntoscopeError as exc:
        raise SchemaError([f"{path}: {exc}"]) from exc


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_document(model), fh)
    logger.info("Saved %s model (%d preparations) to %s",
                model.metadata.get("kind", "ontological"), len(model.preparations), path)
    return path


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from exc
    model = model_from_document(doc)
    logger.info("Loaded model from %s (N=%d, %d preparations)", path, model.space.size, len(model.preparations))
    return model
