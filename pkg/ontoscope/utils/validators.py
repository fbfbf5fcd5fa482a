"""
Input validation for model documents and CLI arguments.
"""

import math
from numbers import Real

SCHEMA_VERSION = "1"
SPACE_KINDS = ("fibonacci-sphere", "abstract")


def _is_number(value):
    return isinstance(value, Real) and not isinstance(value, bool) and math.isfinite(value)


def _numeric_list(values, length, path, errors, non_negative=False):
    if not isinstance(values, list):
        errors.append(f"{path}: expected a list")
        return
    if length is not None and len(values) != length:
        errors.append(f"{path}: expected {length} entries, got {len(values)}")
        return
    for i, v in enumerate(values):
        if not _is_number(v):
            errors.append(f"{path}[{i}]: expected a finite number")
            return
        if non_negative and v < 0:
            errors.append(f"{path}[{i}]: must be non-negative (got {v})")
            return


def _complex_matrix(matrix, path, errors):
    """d x d matrix of [re, im] pairs; returns d or None."""
    if not isinstance(matrix, list) or not matrix:
        errors.append(f"{path}: expected a non-empty square matrix")
        return None
    d = len(matrix)
    for r, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != d:
            errors.append(f"{path}[{r}]: expected {d} entries")
            return None
        for c, entry in enumerate(row):
            if not (isinstance(entry, list) and len(entry) == 2 and all(_is_number(x) for x in entry)):
                errors.append(f"{path}[{r}][{c}]: expected an [re, im] pair")
                return None
    return d


def validate_space(space):
    errors = []
    if not isinstance(space, dict):
        return ["space: expected an object"]
    kind = space.get("kind")
    if kind not in SPACE_KINDS:
        errors.append(f"space.kind: expected one of {', '.join(SPACE_KINDS)}")
    size = space.get("size")
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        errors.append("space.size: expected a positive integer")
        return errors
    _numeric_list(space.get("weights"), size, "space.weights", errors)
    if not errors and any(w <= 0 for w in space["weights"]):
        errors.append("space.weights: must be positive")
    points = space.get("points")
    if kind == "fibonacci-sphere":
        if not isinstance(points, list) or len(points) != size:
            errors.append(f"space.points: expected {size} points")
        else:
            for i, p in enumerate(points):
                if not (isinstance(p, list) and len(p) == 3 and all(_is_number(x) for x in p)):
                    errors.append(f"space.points[{i}]: expected [x, y, z]")
                    break
    elif points is not None and (not isinstance(points, list) or len(points) != size):
        errors.append(f"space.points: expected {size} labels")
    return errors


def validate_model_document(doc):
    """
    Validate a model document and return a list of field-path diagnostics.
    Returns an empty list if the document is structurally valid.
    """
    if not isinstance(doc, dict):
        return ["document: expected a JSON object"]
    errors = []
    if doc.get("schema_version") != SCHEMA_VERSION:
        errors.append(f"schema_version: expected \"{SCHEMA_VERSION}\" (got {doc.get('schema_version')!r})")
    if "metadata" in doc and not isinstance(doc["metadata"], dict):
        errors.append("metadata: expected an object")

    space_errors = validate_space(doc.get("space"))
    errors.extend(space_errors)
    size = doc["space"]["size"] if not space_errors else None

    preparations = doc.get("preparations")
    labels = set()
    if not isinstance(preparations, list) or not preparations:
        errors.append("preparations: expected a non-empty list")
        preparations = []
    for i, prep in enumerate(preparations):
        path = f"preparations[{i}]"
        if not isinstance(prep, dict):
            errors.append(f"{path}: expected an object")
            continue
        label = prep.get("label")
        if not isinstance(label, str) or not label:
            errors.append(f"{path}.label: expected a non-empty string")
        elif label in labels:
            errors.append(f"{path}.label: duplicate label '{label}'")
        else:
            labels.add(label)
        _complex_matrix(prep.get("target"), f"{path}.target", errors)
        _numeric_list(prep.get("density"), size, f"{path}.density", errors, non_negative=True)
        if "context" in prep and not isinstance(prep["context"], str):
            errors.append(f"{path}.context: expected a string")
    for i, prep in enumerate(preparations):
        if not isinstance(prep, dict):
            continue
        decomposition = prep.get("decomposition") or []
        if not isinstance(decomposition, list):
            errors.append(f"preparations[{i}].decomposition: expected a list")
            continue
        for j, part in enumerate(decomposition):
            if not (isinstance(part, list) and len(part) == 2 and _is_number(part[0])):
                errors.append(f"preparations[{i}].decomposition[{j}]: expected [weight, label]")
            elif not isinstance(part[1], str):
                errors.append(f"preparations[{i}].decomposition[{j}]: label must be a string")
            elif part[1] not in labels:
                errors.append(f"preparations[{i}].decomposition[{j}]: unknown preparation '{part[1]}'")

    measurements = doc.get("measurements", [])
    if not isinstance(measurements, list):
        errors.append("measurements: expected a list")
        measurements = []
    seen = set()
    for i, m in enumerate(measurements):
        path = f"measurements[{i}]"
        if not isinstance(m, dict):
            errors.append(f"{path}: expected an object")
            continue
        label = m.get("label")
        if not isinstance(label, str) or not label or label in seen:
            errors.append(f"{path}.label: expected a unique non-empty string")
        else:
            seen.add(label)
        outcomes = m.get("outcomes")
        if not isinstance(outcomes, list) or not outcomes:
            errors.append(f"{path}.outcomes: expected a non-empty list")
            continue
        if not all(isinstance(o, str) for o in outcomes):
            errors.append(f"{path}.outcomes: expected strings")
            continue
        effects = m.get("effects")
        if not isinstance(effects, list) or len(effects) != len(outcomes):
            errors.append(f"{path}.effects: expected one effect per outcome")
        else:
            dims = [_complex_matrix(effect, f"{path}.effects[{k}]", errors) for k, effect in enumerate(effects)]
            if None not in dims and len(set(dims)) > 1:
                errors.append(f"{path}.effects: all effects must share one dimension (got {sorted(set(dims))})")
        response = m.get("response")
        if size is not None and (not isinstance(response, list) or len(response) != size):
            errors.append(f"{path}.response: expected {size} rows")
            continue
        for r, row in enumerate(response or []):
            before = len(errors)
            _numeric_list(row, len(outcomes), f"{path}.response[{r}]", errors)
            if len(errors) > before:
                break
    return errors


def validate_fraction(value):
    errors = []
    if not 0.0 < value < 1.0:
        errors.append(f"fraction must lie strictly between 0 and 1 (got {value})")
    return errors
