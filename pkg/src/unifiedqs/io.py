"""State files, named preset states, and tabular report writers."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .linalg import DensityMatrix, DomainError, PureState
from .monogamy import ghz_state, w_class_state

LOAD_NORM_TOL = 1e-8
CSV_SCHEMA_VERSION = 1


class StateFileError(ValueError):
    """Malformed or inconsistent state file."""


def _pairs(data, expected: int, what: str) -> np.ndarray:
    if not isinstance(data, list):
        raise StateFileError(f"field 'data': expected a list of [re, im] pairs")
    if len(data) != expected:
        raise StateFileError(f"field 'data': expected {expected} {what}, got {len(data)}")
    out = np.empty(expected, dtype=complex)
    for k, item in enumerate(data):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)
        ):
            raise StateFileError(f"field 'data[{k}]': expected a [re, im] pair of numbers, got {item!r}")
        out[k] = complex(item[0], item[1])
    return out


def state_from_dict(doc: dict):
    """Build a PureState or DensityMatrix from a parsed state file."""
    if not isinstance(doc, dict):
        raise StateFileError("top level must be an object")
    for key in ("kind", "dims", "data"):
        if key not in doc:
            raise StateFileError(f"missing field '{key}'")
    kind, dims = doc["kind"], doc["dims"]
    if kind not in ("pure", "mixed"):
        raise StateFileError(f"field 'kind': expected 'pure' or 'mixed', got {kind!r}")
    if (
        not isinstance(dims, list)
        or not dims
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise StateFileError(f"field 'dims': expected a list of positive integers, got {dims!r}")
    d = math.prod(dims)
    if kind == "pure":
        amps = _pairs(doc["data"], d, "amplitudes")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > LOAD_NORM_TOL:
            raise StateFileError(f"field 'data': squared norm {norm} differs from 1 by more than {LOAD_NORM_TOL}")
        if abs(norm - 1.0) > 1e-14:
            amps = amps / math.sqrt(norm)
        return PureState(amps, tuple(dims))
    mat = _pairs(doc["data"], d * d, "matrix entries").reshape(d, d)
    tr = np.trace(mat).real
    if abs(tr - 1.0) > LOAD_NORM_TOL:
        raise StateFileError(f"field 'data': trace {tr} differs from 1 by more than {LOAD_NORM_TOL}")
    try:
        return DensityMatrix(mat / tr, tuple(dims))
    except DomainError as exc:
        raise StateFileError(f"field 'data': {exc}") from None


def state_to_dict(state) -> dict:
    if isinstance(state, PureState):
        data = state.amplitudes
        kind = "pure"
    elif isinstance(state, DensityMatrix):
        data = state.matrix.reshape(-1)
        kind = "mixed"
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    return {
        "kind": kind,
        "dims": list(state.dims),
        "data": [[float(z.real), float(z.imag)] for z in data],
    }


def loads_state(text: str, source: str = "<string>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return state_from_dict(doc)
    except StateFileError as exc:
        raise StateFileError(f"{source}: {exc}") from None


def load_state(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise StateFileError(f"{path}: {exc.strerror}") from None
    return loads_state(text, str(path))


def dumps_state(state) -> str:
    return json.dumps(state_to_dict(state), indent=1)


def save_state(state, path) -> None:
    Path(path).write_text(dumps_state(state) + "\n")


def werner_state(p: float) -> DensityMatrix:
    """``p |Phi+><Phi+| + (1 - p) I / 4``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Werner weight must lie in [0, 1], got {p}")
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return DensityMatrix(p * np.outer(phi, phi.conj()) + (1 - p) * np.eye(4) / 4, (2, 2))


def bell_state() -> PureState:
    return PureState(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2), (2, 2))


PRESET_NAMES = ("bell", "ghz-<n>", "w-symmetric", "w:a,b,c", "werner:p")


def preset_state(name: str):
    """Named states: bell, ghz-<n>, w-symmetric, w:a,b,c, werner:p."""
    try:
        if name == "bell":
            return bell_state()
        if name == "w-symmetric":
            a = 1 / np.sqrt(3)
            return w_class_state(a, a, a)
        if name.startswith("ghz-"):
            return ghz_state(int(name[4:]))
        if name.startswith("w:"):
            a, b, c = (complex(v.replace(" ", "")) for v in name[2:].split(","))
            return w_class_state(a, b, c)
        if name.startswith("werner:"):
            return werner_state(float(name[7:]))
    except (ValueError, DomainError) as exc:
        raise StateFileError(f"preset {name!r}: {exc}") from None
    return None


def resolve_state(spec: str):
    """A preset name or the path of a state file."""
    state = preset_state(spec)
    if state is not None:
        return state
    return load_state(spec)


def format_csv(header_comment: str, columns: list, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# {header_comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v
