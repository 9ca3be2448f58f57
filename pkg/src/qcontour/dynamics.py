"""Piecewise-constant Hamiltonian schedules and unitary propagation.

The generator is branch-independent: propagation backward in physical time
is the adjoint of forward propagation over the same interval, which is
exact for unitary dynamics.  Per-segment eigendecompositions are cached on
the schedule, so repeated propagator evaluations cost only small matrix
products.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, ValidationError

#: tolerance when matching interval endpoints against segment boundaries
_TIME_EPS = 1e-12


class HamiltonianSchedule:
    """Piecewise-constant Hermitian generator over a contiguous time span.

    ``segments`` is a sequence of ``(t_start, t_end, H)`` triples that must
    be contiguous, non-overlapping and share one dimension.  Instances are
    immutable after construction apart from an internal eigendecomposition
    cache, so they are safe to share.
    """

    def __init__(self, segments, *, hermitian_tol: float = linalg.HERMITIAN_TOL):
        if not segments:
            raise ValidationError("schedule needs at least one segment")
        parsed = []
        dim = None
        for t0, t1, h in segments:
            t0, t1 = float(t0), float(t1)
            if not t1 > t0:
                raise ValidationError(
                    f"segment [{t0}, {t1}] has non-positive duration")
            h = linalg.require_hermitian(h, hermitian_tol)
            if dim is None:
                dim = h.shape[0]
            elif h.shape[0] != dim:
                raise DimensionMismatchError(
                    "all segment Hamiltonians must share one dimension")
            parsed.append((t0, t1, h))
        parsed.sort(key=lambda seg: seg[0])
        for (_, end, _), (start, _, _) in zip(parsed, parsed[1:]):
            if abs(end - start) > _TIME_EPS:
                raise ValidationError(
                    f"segments are not contiguous at t = {end} vs {start}")
        self._segments = tuple(parsed)
        self._dim = dim
        self._eigs: list[tuple[np.ndarray, np.ndarray] | None]
        self._eigs = [None] * len(parsed)

    @classmethod
    def constant(cls, h, t_start: float, t_end: float) -> "HamiltonianSchedule":
        """Schedule with a single constant generator on [t_start, t_end]."""
        return cls([(t_start, t_end, h)])

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def segments(self):
        return self._segments

    @property
    def t_min(self) -> float:
        return self._segments[0][0]

    @property
    def t_max(self) -> float:
        return self._segments[-1][1]

    def _require_in_span(self, t: float):
        if t < self.t_min - _TIME_EPS or t > self.t_max + _TIME_EPS:
            raise ValidationError(
                f"time {t} outside schedule span "
                f"[{self.t_min}, {self.t_max}]")

    def _segment_exp(self, index: int, dt: float) -> np.ndarray:
        """exp(-i * H_index * dt), from the cached eigendecomposition."""
        cached = self._eigs[index]
        if cached is None:
            w, v = np.linalg.eigh(self._segments[index][2])
            cached = (w, v)
            self._eigs[index] = cached
        w, v = cached
        return (v * np.exp(-1j * dt * w)) @ v.conj().T


def propagate(sched: HamiltonianSchedule, t_a: float, t_b: float) -> np.ndarray:
    """Unitary propagator from t_a to t_b.

    For t_b >= t_a this is the chronologically ordered product of the
    per-segment exponentials, latest segment leftmost.  For t_b < t_a it is
    the adjoint of the forward propagator, realizing anti-chronological
    ordering on the backward branch.
    """
    t_a, t_b = float(t_a), float(t_b)
    sched._require_in_span(t_a)
    sched._require_in_span(t_b)
    if t_b < t_a:
        return propagate(sched, t_b, t_a).conj().T
    u = np.eye(sched.dim, dtype=complex)
    if t_b - t_a <= _TIME_EPS:
        return u
    for index, (s0, s1, _) in enumerate(sched.segments):
        lo = max(t_a, s0)
        hi = min(t_b, s1)
        if hi - lo > _TIME_EPS:
            u = sched._segment_exp(index, hi - lo) @ u
    return u


def evolve_state(psi, sched: HamiltonianSchedule, t_a: float,
                 t_b: float) -> np.ndarray:
    """Propagate a normalized state from t_a to t_b."""
    psi = linalg.as_state(psi, sched.dim)
    return propagate(sched, t_a, t_b) @ psi


def heisenberg_projector(alpha, sched: HamiltonianSchedule, t_k: float,
                         t_0: float) -> np.ndarray:
    """Projector onto ``alpha`` at time t_k, in the Heisenberg picture
    referred to t_0:  U^dag(t_k, t_0) |alpha><alpha| U(t_k, t_0).
    """
    alpha = linalg.as_state(alpha, sched.dim)
    u = propagate(sched, t_0, t_k)
    rotated = u.conj().T @ alpha
    return np.outer(rotated, rotated.conj())
