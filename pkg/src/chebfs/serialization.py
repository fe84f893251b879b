"""JSON wire formats for matrices and paths, plus CLI argument shorthands.

Matrices travel as ``{"order": k, "re": [[...]], "im": [[...]]}``rows-major;
paths as ``{"A": <matrix>, "D": [...]}``.
"""

import json
import os

import numpy as np

from .errors import InvalidInputError
from .hermitian import GeodesicPath, path_eval
from .potentials import counterexample_path


def matrix_to_json(matrix) -> dict:
    m = np.asarray(matrix, dtype=complex)
    return {
        "order": int(m.shape[0]),
        "re": [[float(v) for v in row] for row in m.real],
        "im": [[float(v) for v in row] for row in m.imag],
    }


def matrix_from_json(data) -> np.ndarray:
    try:
        order = int(data["order"])
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix JSON: {exc}") from exc
    if re.shape != (order, order) or im.shape != (order, order):
        raise InvalidInputError(
            f"matrix JSON shape mismatch: order={order}, re={re.shape}, im={im.shape}"
        )
    return re + 1j * im


def path_to_json(path: GeodesicPath) -> dict:
    return {"A": matrix_to_json(path.a), "D": [float(v) for v in path.d]}


def path_from_json(data) -> GeodesicPath:
    try:
        a = matrix_from_json(data["A"])
        d = np.asarray(data["D"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed path JSON: {exc}") from exc
    return GeodesicPath(a=a, d=d)


def parse_matrix_arg(text: str) -> np.ndarray:
    """Resolve a CLI matrix argument: shorthand or JSON file path.

    Shorthands: ``identityK`` for the K x K identity, ``diag:a,b,...`` for a
    diagonal matrix, ``counterexample[:t]`` for the cosh/sinh path evaluated
    at t (default 1).  Anything else is read as a JSON file.
    """
    if text.startswith("identity"):
        try:
            order = int(text[len("identity") :])
        except ValueError as exc:
            raise InvalidInputError(f"bad identity shorthand {text!r}") from exc
        if order < 1:
            raise InvalidInputError("identity order must be positive")
        return np.eye(order, dtype=complex)
    if text.startswith("diag:"):
        try:
            values = [float(v) for v in text[len("diag:") :].split(",")]
        except ValueError as exc:
            raise InvalidInputError(f"bad diag shorthand {text!r}") from exc
        return np.diag(np.asarray(values, dtype=complex))
    if text.startswith("counterexample"):
        rest = text[len("counterexample") :]
        t = 1.0
        if rest:
            if not rest.startswith(":"):
                raise InvalidInputError(f"bad counterexample shorthand {text!r}")
            t = float(rest[1:])
        return path_eval(counterexample_path(), t)
    if not os.path.exists(text):
        raise FileNotFoundError(text)
    with open(text, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))


def load_path_file(filename: str) -> GeodesicPath:
    if filename == "counterexample":
        return counterexample_path()
    if not os.path.exists(filename):
        raise FileNotFoundError(filename)
    with open(filename, "r", encoding="utf-8") as fh:
        return path_from_json(json.load(fh))
