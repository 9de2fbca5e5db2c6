"""JSON vector-set documents.

Format::

    {"dimension": 2,
     "generators": [[1, 0], [0.5, 0.866]],
     "tolerance": {"eps_abs": 1e-9, "eps_rel": 1e-9},   # optional
     "metadata": {"name": "hexagon"}}                    # optional

Generators may list one vector per +/- pair or the full symmetric set.
"""

import json
from pathlib import Path

from .errors import DocumentError
from .vectorset import DEFAULT_TOL, ToleranceContext, canonicalize


def parse_document(doc, tol=None):
    """(VectorSet, metadata) from a decoded document; ``tol`` overrides the document's."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    try:
        dim = int(doc["dimension"])
        gens = doc["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"missing or invalid field: {exc}") from exc
    if not isinstance(gens, list) or not gens:
        raise DocumentError("generators must be a non-empty list")
    for g in gens:
        if not isinstance(g, list) or len(g) != dim:
            raise DocumentError(f"generator {g!r} does not have length {dim}")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in g):
            raise DocumentError(f"generator {g!r} has non-numeric entries")
    if tol is None:
        t = doc.get("tolerance") or {}
        try:
            tol = ToleranceContext(float(t.get("eps_abs", DEFAULT_TOL.eps_abs)),
                                   float(t.get("eps_rel", DEFAULT_TOL.eps_rel)))
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"bad tolerance: {exc}") from exc
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object")
    return canonicalize(gens, tol), {str(k): str(v) for k, v in metadata.items()}


def load_document(path, tol=None):
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc
    return parse_document(doc, tol)


def to_document(R, metadata=None):
    return {
        "dimension": R.dim,
        "generators": [[float(x) for x in v] for v in R.vectors],
        "tolerance": {"eps_abs": R.tol.eps_abs, "eps_rel": R.tol.eps_rel},
        "metadata": dict(metadata or {}),
    }


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def save_document(R, path, metadata=None):
    Path(path).write_text(dumps(to_document(R, metadata)))
