"""Fixed points, quantum histories and projector-chain machinery.

A fixed point pins a normalized state at one time; because its forward and
backward parts are equal by definition, the state is stored once.  A
quantum history is an ordered sequence of at least two fixed points joined
by unitary propagation.  Families collect histories over one time grid and
are the arena for relative weights.

Overlap convention: when two histories are compared, the backward-branch
factor of each fixed point enters conjugated relative to the forward one,
so a single fixed-point pair contributes |<l|k>|^2.  This makes families
built from orthonormal bases exactly Kronecker-orthogonal and keeps
validation basis-independent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .dynamics import HamiltonianSchedule, heisenberg_projector
from .errors import (DimensionMismatchError, EnumerationGuardError,
                     ValidationError)

#: refuse exhaustive enumerations beyond this many histories
MAX_ENUMERATION = 10 ** 6

#: two grid times closer than this are treated as the same time
_TIME_EPS = 1e-12


@dataclass(frozen=True)
class FixedPoint:
    """A labeled state pinned at one time, equal on both branches."""

    time: float
    state: np.ndarray
    label: str = "fp"

    def __post_init__(self):
        state = linalg.as_state(self.state)
        state.setflags(write=False)
        object.__setattr__(self, "time", float(self.time))
        object.__setattr__(self, "state", state)

    @property
    def dim(self) -> int:
        return self.state.size


@dataclass(frozen=True)
class QuantumHistory:
    """Ordered sequence of N_t >= 2 fixed points at strictly increasing times."""

    points: tuple[FixedPoint, ...]

    def __init__(self, points):
        pts = tuple(points)
        if len(pts) < 2:
            raise ValidationError("a history needs at least two fixed points")
        if any(b.time <= a.time for a, b in zip(pts, pts[1:])):
            raise ValidationError("fixed-point times must strictly increase")
        if len({p.dim for p in pts}) != 1:
            raise DimensionMismatchError(
                "all fixed points in a history must share one dimension")
        object.__setattr__(self, "points", pts)

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(p.time for p in self.points)

    @property
    def n_times(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.points)


def _same_times(a: QuantumHistory, b: QuantumHistory) -> bool:
    return a.n_times == b.n_times and all(
        abs(x - y) <= _TIME_EPS for x, y in zip(a.times, b.times))


def histories_equal(a: QuantumHistory, b: QuantumHistory,
                    tol: float = linalg.DEFAULT_TOL) -> bool:
    """Pointwise equality of two histories (times and states)."""
    if not _same_times(a, b) or a.dim != b.dim:
        return False
    return all(np.max(np.abs(p.state - q.state)) <= tol
               for p, q in zip(a.points, b.points))


@dataclass(frozen=True)
class HistoryFamily:
    """Histories over one shared time grid, with the constrained times marked.

    ``constraint_times`` lists the times at which the fixed point is known
    (there are S_t of them); the remaining times are free slots.  ``choices``
    optionally records, per history, the basis index chosen at each free
    slot, in time order.
    """

    histories: tuple[QuantumHistory, ...]
    constraint_times: tuple[float, ...] = ()
    choices: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if not self.histories:
            raise ValidationError("family must contain at least one history")
        first = self.histories[0]
        for h in self.histories[1:]:
            if not _same_times(first, h):
                raise ValidationError(
                    "all histories in a family must share one time grid")
            if h.dim != first.dim:
                raise DimensionMismatchError(
                    "all histories in a family must share one dimension")
        times = first.times
        for t in self.constraint_times:
            if not any(abs(t - g) <= _TIME_EPS for g in times):
                raise ValidationError(
                    f"constraint time {t} is not a grid time")
        if len(self.constraint_times) > first.n_times:
            raise ValidationError("more constraints than grid times")
        object.__setattr__(self, "histories", tuple(self.histories))
        object.__setattr__(self, "constraint_times",
                           tuple(float(t) for t in self.constraint_times))
        if self.choices is not None:
            object.__setattr__(self, "choices",
                               tuple(tuple(c) for c in self.choices))

    @property
    def times(self) -> tuple[float, ...]:
        return self.histories[0].times

    @property
    def dim(self) -> int:
        return self.histories[0].dim

    def __contains__(self, h: QuantumHistory) -> bool:
        return any(g is h or histories_equal(g, h) for g in self.histories)


def history_inner(h_k: QuantumHistory, h_l: QuantumHistory) -> complex:
    """Overlap of two histories over the doubled contour.

    Product over fixed points of the forward overlap times the conjugated
    backward overlap, i.e. prod_i |<psi_{l_i}|psi_{k_i}>|^2.  Equal to 1 for
    identical histories and 0 whenever any pair of same-time fixed points
    is orthogonal.
    """
    if h_k.dim != h_l.dim:
        raise DimensionMismatchError("histories live in different dimensions")
    if not _same_times(h_k, h_l):
        raise ValidationError(
            "history overlap requires one shared time grid")
    out = 1.0 + 0.0j
    for p, q in zip(h_k.points, h_l.points):
        amp = linalg.inner(q.state, p.state)
        out *= amp * amp.conjugate()
    return complex(out)


@dataclass(frozen=True)
class FamilyReport:
    """Outcome of a family consistency check."""

    valid: bool
    violations: tuple[tuple[int, int, float], ...] = ()


def validate_family(fam: HistoryFamily,
                    tol: float = linalg.DEFAULT_TOL) -> FamilyReport:
    """Check mutual orthogonality of all distinct history pairs.

    Returns the violating pairs as (index, index, |overlap|) triples.
    """
    violations = []
    for i, j in itertools.combinations(range(len(fam.histories)), 2):
        overlap = abs(history_inner(fam.histories[i], fam.histories[j]))
        if overlap > tol:
            violations.append((i, j, overlap))
    return FamilyReport(valid=not violations, violations=tuple(violations))


@dataclass(frozen=True)
class HistoryOperator:
    """Time-ordered chain of Heisenberg-picture projectors."""

    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "projectors", tuple(
            linalg.as_square(p) for p in self.projectors))
        for p in self.projectors:
            if not linalg.is_projector(p, 1e-10):
                raise ValidationError("chain entry is not a projector")

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0] if self.projectors else 0

    def matrix(self, dim: int | None = None) -> np.ndarray:
        """Chain product with the latest projector leftmost."""
        if not self.projectors:
            if dim is None:
                raise ValidationError("empty chain needs an explicit dim")
            return np.eye(dim, dtype=complex)
        out = np.eye(self.dim, dtype=complex)
        for p in self.projectors:
            out = p @ out
        return out


def history_operator(fps, sched: HamiltonianSchedule,
                     t_0: float) -> HistoryOperator:
    """Heisenberg projector chain for the given fixed points.

    The first fixed point is the preparation slot and contributes no
    projector; each later point contributes the projector onto its state at
    its time, referred back to t_0.
    """
    fps = list(fps)
    if any(b.time <= a.time for a, b in zip(fps, fps[1:])):
        raise ValidationError("fixed points must be time-ordered")
    if fps and t_0 > fps[0].time + _TIME_EPS:
        raise ValidationError("reference time must not exceed the first time")
    projs = [heisenberg_projector(p.state, sched, p.time, t_0)
             for p in fps[1:]]
    return HistoryOperator(tuple(projs))


def record_state(chain: HistoryOperator, psi1) -> np.ndarray:
    """Apply the projector chain to the preparation state.

    The result is left unnormalized; its squared norm is the diagonal
    decoherence functional of the chain.
    """
    psi = linalg.as_state(psi1)
    for p in chain.projectors:
        if p.shape[0] != psi.size:
            raise DimensionMismatchError("chain and state dimensions differ")
        psi = p @ psi
    return psi


def decoherence_functional(chain_a: HistoryOperator, chain_b: HistoryOperator,
                           psi1) -> complex:
    """<psi1| C_b^dag C_a |psi1> for two projector chains."""
    rec_a = record_state(chain_a, psi1)
    rec_b = record_state(chain_b, psi1)
    return complex(np.vdot(rec_b, rec_a))


def _require_density_matrix(rho, dim: int) -> np.ndarray:
    rho = linalg.as_square(rho, dim)
    if not linalg.is_hermitian(rho, 1e-8):
        raise ValidationError("density matrix must be Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValidationError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho).min() < -1e-8:
        raise ValidationError("density matrix must be positive semidefinite")
    return rho


def chain_probability(fps, sched: HamiltonianSchedule, rho1) -> float:
    """Probability of a projector-chain history from the initial state rho1.

    Tr[P_N ... P_2 rho1 P_2 ... P_N], with the Heisenberg reference at the
    first fixed point's time; rho1 is the state at that reference time.
    """
    fps = list(fps)
    if not fps:
        raise ValidationError("chain probability needs at least one fixed point")
    rho1 = _require_density_matrix(rho1, fps[0].dim)
    chain = history_operator(fps, sched, fps[0].time).matrix(fps[0].dim)
    value = np.trace(chain @ rho1 @ chain.conj().T)
    return float(value.real)


@dataclass(frozen=True)
class DecoherenceReport:
    """Largest off-diagonal decoherence-functional entry in a family."""

    decoherent: bool
    max_offdiagonal: float
    worst_pair: tuple[int, int] | None = None


def decoherence_report(fam: HistoryFamily, sched: HamiltonianSchedule, psi1,
                       tol: float = linalg.DEFAULT_TOL) -> DecoherenceReport:
    """Evaluate all pairwise decoherence functionals over the family.

    Chains are referred to the first grid time; ``psi1`` is the preparation
    at that time.
    """
    t_0 = fam.times[0]
    chains = [history_operator(h.points, sched, t_0) for h in fam.histories]
    records = [record_state(c, psi1) for c in chains]
    worst = 0.0
    worst_pair = None
    for i, j in itertools.combinations(range(len(records)), 2):
        value = abs(np.vdot(records[j], records[i]))
        if value > worst:
            worst, worst_pair = value, (i, j)
    return DecoherenceReport(decoherent=worst <= tol,
                             max_offdiagonal=worst, worst_pair=worst_pair)


def is_decoherent_space(fam: HistoryFamily, sched: HamiltonianSchedule, psi1,
                        tol: float = linalg.DEFAULT_TOL) -> bool:
    """True iff every distinct pair of family chains decoheres within tol."""
    return decoherence_report(fam, sched, psi1, tol).decoherent


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for an enumerated family: grid, per-time bases, constraints.

    ``bases`` holds one orthonormal set per grid time (complete sets are
    required wherever the time is unconstrained); ``constraints`` pins fixed
    points at a subset of the grid times.
    """

    times: tuple[float, ...]
    bases: tuple[tuple[np.ndarray, ...], ...]
    constraints: tuple[FixedPoint, ...] = ()

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        if len(times) < 2:
            raise ValidationError("family spec needs at least two grid times")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError("grid times must strictly increase")
        if len(self.bases) != len(times):
            raise ValidationError("need exactly one basis per grid time")
        bases = tuple(tuple(linalg.as_state(v) for v in basis)
                      for basis in self.bases)
        dims = {v.size for basis in bases for v in basis}
        if len(dims) != 1:
            raise DimensionMismatchError("basis vectors must share one dimension")
        for i, basis in enumerate(bases):
            if not linalg.is_orthonormal(basis, 1e-8):
                raise ValidationError(
                    f"basis at time {times[i]} is not orthonormal")
        seen = set()
        for fp in self.constraints:
            matches = [t for t in times if abs(t - fp.time) <= _TIME_EPS]
            if not matches:
                raise ValidationError(
                    f"constraint time {fp.time} is not a grid time")
            if matches[0] in seen:
                raise ValidationError(
                    f"duplicate constraint at time {matches[0]}")
            seen.add(matches[0])
            if fp.dim != next(iter(dims)):
                raise DimensionMismatchError(
                    "constraint state dimension does not match the bases")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def dim(self) -> int:
        return self.bases[0][0].size

    @property
    def constrained_times(self) -> tuple[float, ...]:
        return tuple(sorted(fp.time for fp in self.constraints))

    def history_count(self) -> int:
        """Number of histories the recipe enumerates to."""
        constrained = set()
        for fp in self.constraints:
            for i, t in enumerate(self.times):
                if abs(t - fp.time) <= _TIME_EPS:
                    constrained.add(i)
        return math.prod(len(self.bases[i]) for i in range(len(self.times))
                         if i not in constrained)


def enumerate_family(spec: FamilySpec,
                     guard: int = MAX_ENUMERATION) -> HistoryFamily:
    """All histories consistent with the recipe's fixed-point constraints.

    Free slots range over the full basis at their time; constrained slots
    are pinned.  Raises EnumerationGuardError when the combination count
    exceeds ``guard``.
    """
    count = spec.history_count()
    if count > guard:
        raise EnumerationGuardError(
            f"enumeration would produce {count} histories (guard: {guard})")
    pinned = {}
    for fp in spec.constraints:
        for i, t in enumerate(spec.times):
            if abs(t - fp.time) <= _TIME_EPS:
                pinned[i] = fp
    slot_options = []
    for i, t in enumerate(spec.times):
        if i in pinned:
            slot_options.append([(None, pinned[i])])
        else:
            basis = spec.bases[i]
            if len(basis) != spec.dim:
                raise ValidationError(
                    f"basis at unconstrained time {t} must be complete "
                    f"({len(basis)} of {spec.dim} vectors)")
            slot_options.append([
                (k, FixedPoint(t, v, label=str(k)))
                for k, v in enumerate(basis)])
    histories = []
    choices = []
    for combo in itertools.product(*slot_options):
        histories.append(QuantumHistory(tuple(fp for _, fp in combo)))
        choices.append(tuple(k for k, _ in combo if k is not None))
    return HistoryFamily(histories=tuple(histories),
                         constraint_times=spec.constrained_times,
                         choices=tuple(choices))
