"""Lossless serialization of parameter trees.

A parameter document is one self-describing JSON object::

    {"spec": {...}, "layers": [{"name": "layer_0/W", "shape": [..], "data": base64}]}

where ``data`` holds the row-major little-endian float64 buffer and
``name`` is the '/'-joined path into the tree.
"""

from __future__ import annotations

import base64
import json

import numpy as np

from ..errors import ContractError
from .autodiff import tree_leaves


def params_to_doc(params: dict, spec: dict | None = None) -> dict:
    layers = []
    for path, leaf in tree_leaves(params):
        arr = np.ascontiguousarray(leaf, dtype=np.float64)
        layers.append(
            {
                "name": path,
                "shape": list(arr.shape),
                "data": base64.b64encode(arr.astype("<f8").tobytes()).decode("ascii"),
            }
        )
    return {"spec": spec or {}, "layers": layers}


def params_from_doc(doc: dict) -> tuple:
    if "layers" not in doc:
        raise ContractError("not a parameter document: missing 'layers'")
    params: dict = {}
    for entry in doc["layers"]:
        buf = base64.b64decode(entry["data"])
        arr = np.frombuffer(buf, dtype="<f8").astype(np.float64).reshape(entry["shape"])
        node = params
        parts = entry["name"].split("/")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
        node[parts[-1]] = arr.copy()
    return params, doc.get("spec", {})


def save_params(path, params: dict, spec: dict | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(params_to_doc(params, spec), fh, indent=1)
        fh.write("\n")


def load_params(path) -> tuple:
    with open(path) as fh:
        return params_from_doc(json.load(fh))
