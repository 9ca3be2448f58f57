"""Model files: a JSON description of a grid, schedule, bases and constraints.

Schema (complex numbers are [re, im] pairs, matrices are row-major):

    {
      "dim": 2,
      "grid": [0.0, 0.7853981633974483],
      "hamiltonian": [
        {"t_start": 0.0, "t_end": 0.7853981633974483,
         "matrix": [[[0,0],[1,0]], [[1,0],[0,0]]]}
      ],
      "bases": [null, [[[1,0],[0,0]], [[0,0],[1,0]]]],
      "constraints": [{"time": 0.0, "state": [[1,0],[0,0]], "label": "prep"}],
      "preparation": [[1,0],[0,0]]
    }

``bases`` may be omitted or contain null entries; missing bases default to
the computational basis.  ``preparation`` is optional and defaults to the
constraint at the first grid time when present.  Matrices must be Hermitian
within 1e-8 on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from .contour import TimeGrid
from .dynamics import HamiltonianSchedule
from .errors import ModelFormatError, ValidationError
from .histories import FamilySpec, FixedPoint
from .measure import ToyBundle

_TIME_EPS = 1e-12


def _complex_from_pair(value, where: str) -> complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(x, (int, float)) for x in value)):
        raise ModelFormatError(
            f"{where}: expected a [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def vector_from_json(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ModelFormatError(f"{where}: expected a non-empty list of pairs")
    return np.array([_complex_from_pair(v, f"{where}[{i}]")
                     for i, v in enumerate(value)])


def matrix_from_json(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ModelFormatError(f"{where}: expected a non-empty list of rows")
    rows = [vector_from_json(row, f"{where}[{i}]")
            for i, row in enumerate(value)]
    if len({r.size for r in rows}) != 1 or rows[0].size != len(rows):
        raise ModelFormatError(f"{where}: matrix is not square")
    return np.array(rows)


def pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def vector_to_json(vec) -> list:
    return [pair(z) for z in np.asarray(vec, dtype=complex).reshape(-1)]


def matrix_to_json(mat) -> list:
    return [vector_to_json(row) for row in np.asarray(mat, dtype=complex)]


@dataclass(frozen=True)
class ModelSpec:
    """Parsed model: grid, schedule, per-time bases, constraints, preparation."""

    dim: int
    grid: TimeGrid
    schedule: HamiltonianSchedule
    bases: tuple[tuple[np.ndarray, ...], ...]
    constraints: tuple[FixedPoint, ...]
    preparation: np.ndarray | None = None

    @property
    def n_times(self) -> int:
        return self.grid.n_times

    def constraint_at(self, t: float) -> FixedPoint | None:
        for fp in self.constraints:
            if abs(fp.time - t) <= _TIME_EPS:
                return fp
        return None

    def preparation_state(self) -> np.ndarray:
        """The preparation, defaulting to the first-time constraint."""
        if self.preparation is not None:
            return self.preparation
        fp = self.constraint_at(self.grid.t_min)
        if fp is None:
            raise ValidationError(
                "model has no preparation and no constraint at the first time")
        return fp.state

    def family_spec(self) -> FamilySpec:
        return FamilySpec(times=self.grid.times, bases=self.bases,
                          constraints=self.constraints)

    def toy_bundle(self) -> ToyBundle:
        """Read the model as past branches, one pivot, future branches.

        Requires exactly three grid times with the single constraint at the
        middle one; the bases at the outer times are the branch sets.
        """
        if self.grid.n_times != 3:
            raise ValidationError(
                "bundle decomposition needs exactly three grid times")
        t1, t, t2 = self.grid.times
        pivot = self.constraint_at(t)
        if pivot is None or len(self.constraints) != 1:
            raise ValidationError(
                "bundle decomposition needs exactly one constraint, "
                "at the middle time")
        past = tuple(FixedPoint(t1, v, label=str(k))
                     for k, v in enumerate(self.bases[0]))
        future = tuple(FixedPoint(t2, v, label=str(k))
                       for k, v in enumerate(self.bases[2]))
        return ToyBundle(past=past, pivot=pivot, future=future)


def _computational_basis(dim: int) -> tuple[np.ndarray, ...]:
    return tuple(np.eye(dim, dtype=complex)[:, k].copy() for k in range(dim))


def model_from_dict(doc: dict) -> ModelSpec:
    """Build and validate a ModelSpec from parsed JSON."""
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    for key in ("dim", "grid", "hamiltonian"):
        if key not in doc:
            raise ModelFormatError(f"model is missing required key {key!r}")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ModelFormatError(f"dim: expected a positive integer, got {dim!r}")
    if (not isinstance(doc["grid"], list) or len(doc["grid"]) < 1
            or not all(isinstance(t, (int, float)) for t in doc["grid"])):
        raise ModelFormatError("grid: expected a list of times")
    try:
        grid = TimeGrid(doc["grid"])
    except ValidationError as exc:
        raise ModelFormatError(f"grid: {exc}") from exc

    segments = []
    if not isinstance(doc["hamiltonian"], list) or not doc["hamiltonian"]:
        raise ModelFormatError("hamiltonian: expected a list of segments")
    for i, seg in enumerate(doc["hamiltonian"]):
        where = f"hamiltonian[{i}]"
        if not isinstance(seg, dict):
            raise ModelFormatError(f"{where}: expected an object")
        for key in ("t_start", "t_end", "matrix"):
            if key not in seg:
                raise ModelFormatError(f"{where}: missing key {key!r}")
        h = matrix_from_json(seg["matrix"], f"{where}.matrix")
        if h.shape[0] != dim:
            raise ModelFormatError(
                f"{where}.matrix: dimension {h.shape[0]} does not match dim")
        segments.append((seg["t_start"], seg["t_end"], h))
    schedule = HamiltonianSchedule(segments)
    if schedule.t_min > grid.t_min + _TIME_EPS or \
            schedule.t_max < grid.t_max - _TIME_EPS:
        raise ValidationError("schedule span does not cover the grid")

    raw_bases = doc.get("bases")
    if raw_bases is None:
        raw_bases = [None] * grid.n_times
    if not isinstance(raw_bases, list) or len(raw_bases) != grid.n_times:
        raise ModelFormatError(
            "bases: expected one entry per grid time (or null)")
    bases = []
    for i, entry in enumerate(raw_bases):
        if entry is None:
            bases.append(_computational_basis(dim))
            continue
        where = f"bases[{i}]"
        if not isinstance(entry, list) or not entry:
            raise ModelFormatError(f"{where}: expected a list of states")
        vecs = tuple(vector_from_json(v, f"{where}[{k}]")
                     for k, v in enumerate(entry))
        for k, v in enumerate(vecs):
            if v.size != dim:
                raise ModelFormatError(
                    f"{where}[{k}]: dimension {v.size} does not match dim")
        if not linalg.is_orthonormal(vecs, 1e-8):
            raise ValidationError(f"basis at grid time {grid.times[i]} "
                                  "is not orthonormal")
        bases.append(vecs)

    constraints = []
    for i, entry in enumerate(doc.get("constraints", [])):
        where = f"constraints[{i}]"
        if not isinstance(entry, dict) or "time" not in entry \
                or "state" not in entry:
            raise ModelFormatError(
                f"{where}: expected an object with time and state")
        t = entry["time"]
        if not any(abs(t - g) <= _TIME_EPS for g in grid.times):
            raise ValidationError(f"{where}: time {t} is not a grid time")
        state = vector_from_json(entry["state"], f"{where}.state")
        label = entry.get("label", f"c{i}")
        try:
            constraints.append(FixedPoint(float(t), state, label=str(label)))
        except ValidationError as exc:
            raise ValidationError(f"{where}: {exc}") from exc

    preparation = None
    if doc.get("preparation") is not None:
        preparation = linalg.as_state(
            vector_from_json(doc["preparation"], "preparation"), dim)

    return ModelSpec(dim=dim, grid=grid, schedule=schedule,
                     bases=tuple(bases), constraints=tuple(constraints),
                     preparation=preparation)


def model_to_dict(model: ModelSpec) -> dict:
    """Serialize a ModelSpec back to the JSON schema (round-trip exact)."""
    return {
        "dim": model.dim,
        "grid": list(model.grid.times),
        "hamiltonian": [
            {"t_start": t0, "t_end": t1, "matrix": matrix_to_json(h)}
            for t0, t1, h in model.schedule.segments],
        "bases": [[vector_to_json(v) for v in basis]
                  for basis in model.bases],
        "constraints": [
            {"time": fp.time, "state": vector_to_json(fp.state),
             "label": fp.label}
            for fp in model.constraints],
        "preparation": (None if model.preparation is None
                        else vector_to_json(model.preparation)),
    }


def load_model(path) -> ModelSpec:
    """Parse a model file; parse problems carry line-anchored messages."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: {exc}") from exc
    return model_from_dict(doc)


def save_model(model: ModelSpec, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2),
                          encoding="utf-8")
