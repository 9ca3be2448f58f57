"""Seeded random generators for states, bases and schedules.

All randomness flows through the counter-based Philox generator so that
every seeded run is reproducible bit for bit.
"""

from __future__ import annotations

import numpy as np

from .dynamics import HamiltonianSchedule


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unit vector."""
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def random_hermitian(rng: np.random.Generator, dim: int,
                     scale: float = 1.0) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (m + m.conj().T) / 2.0


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via the QR of a Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_orthonormal_basis(rng: np.random.Generator,
                             dim: int) -> list[np.ndarray]:
    u = haar_unitary(rng, dim)
    return [u[:, k].copy() for k in range(dim)]


def random_schedule(rng: np.random.Generator, times, dim: int,
                    scale: float = 1.0) -> HamiltonianSchedule:
    """Independent random Hermitian generator on each grid interval."""
    times = [float(t) for t in times]
    segments = [(a, b, random_hermitian(rng, dim, scale))
                for a, b in zip(times, times[1:])]
    return HamiltonianSchedule(segments)
