"""Reading and writing ``{"shape": [...], "entries": [...]}`` tensor files."""
from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .errors import KhinlabError


class TensorFileError(KhinlabError):
    """The tensor file is missing, not JSON, or inconsistent with its shape."""


def parse_tensor(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFileError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "shape" not in doc or "entries" not in doc:
        raise TensorFileError('expected an object with "shape" and "entries"')
    shape, entries = doc["shape"], doc["entries"]
    if (not isinstance(shape, list) or not shape
            or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in shape)):
        raise TensorFileError(f"shape must be a nonempty list of positive integers, got {shape!r}")
    if not isinstance(entries, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in entries
    ):
        raise TensorFileError("entries must be a flat list of numbers")
    if len(entries) != math.prod(shape):
        raise TensorFileError(f"shape {shape} needs {math.prod(shape)} entries, got {len(entries)}")
    arr = np.array(entries, dtype=np.float64).reshape(shape)
    if not np.all(np.isfinite(arr)):
        raise TensorFileError("entries must be finite")
    return arr


def load_tensor(path) -> tuple[np.ndarray, str]:
    """Return the tensor and the sha256 of the file bytes."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise TensorFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise TensorFileError(f"{path} is not UTF-8") from None
    return parse_tensor(text), hashlib.sha256(raw).hexdigest()


def tensor_document(arr) -> dict:
    arr = np.asarray(arr, dtype=np.float64)
    return {"shape": list(arr.shape), "entries": [float(x) for x in arr.ravel()]}


def save_tensor(path, arr) -> None:
    Path(path).write_text(json.dumps(tensor_document(arr)) + "\n")
