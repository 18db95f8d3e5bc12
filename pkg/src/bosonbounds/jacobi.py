"""Orthogonal Jacobi relative coordinates for N equal-mass particles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .model import _check_n


@dataclass(frozen=True)
class JacobiFrame:
    """N x N orthogonal matrix R with [rho] = R [r] and [pi] = R [p].

    Row 0 is the centre-of-mass row (all entries 1/sqrt(N)); row k >= 1
    separates particle k from the centre of mass of particles 0..k-1.
    """

    n: int
    matrix: np.ndarray


@dataclass(frozen=True)
class Configuration:
    positions: np.ndarray
    momenta: np.ndarray | None = None

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise DimensionMismatch(f"positions must have shape (N, 3), got {pos.shape}")
        object.__setattr__(self, "positions", pos)
        if self.momenta is not None:
            mom = np.asarray(self.momenta, dtype=float)
            if mom.shape != pos.shape:
                raise DimensionMismatch(
                    f"momenta shape {mom.shape} does not match positions {pos.shape}"
                )
            object.__setattr__(self, "momenta", mom)

    @property
    def n(self):
        return self.positions.shape[0]


def jacobi_matrix(n) -> JacobiFrame:
    n = _check_n(n)
    R = np.zeros((n, n))
    R[0, :] = 1.0 / np.sqrt(n)
    for k in range(2, n + 1):
        norm = np.sqrt(k * (k - 1.0))
        R[k - 1, : k - 1] = 1.0 / norm
        R[k - 1, k - 1] = -(k - 1.0) / norm
    return JacobiFrame(n, R)


def _check(frame, config):
    if config.n != frame.n:
        raise DimensionMismatch(f"configuration has {config.n} particles, frame expects {frame.n}")


def to_relative(frame: JacobiFrame, config: Configuration) -> Configuration:
    """Apply R to positions (and momenta, if present) componentwise."""
    _check(frame, config)
    mom = None if config.momenta is None else frame.matrix @ config.momenta
    return Configuration(frame.matrix @ config.positions, mom)


def from_relative(frame: JacobiFrame, config: Configuration) -> Configuration:
    _check(frame, config)
    mom = None if config.momenta is None else frame.matrix.T @ config.momenta
    return Configuration(frame.matrix.T @ config.positions, mom)


def orthogonality_residual(frame: JacobiFrame) -> float:
    """max |R R^T - I| entrywise."""
    R = frame.matrix
    return float(np.max(np.abs(R @ R.T - np.eye(frame.n))))


def pair_sum_identity_residual(frame: JacobiFrame, config: Configuration) -> float:
    """Relative residual of N * sum_{i>=2} rho_i^2 = sum_{i<j} |r_i - r_j|^2.

    The relative coordinates are evaluated on positions measured from
    particle 1 (rows 2..N annihilate translations), so a fully coincident
    configuration gives exactly zero on both sides.
    """
    _check(frame, config)
    r = config.positions
    rho = frame.matrix[1:] @ (r - r[0])
    lhs = frame.n * float(np.sum(rho * rho))
    diff = r[:, None, :] - r[None, :, :]
    iu = np.triu_indices(frame.n, k=1)
    rhs = float(np.sum(diff[iu] ** 2))
    return abs(lhs - rhs) / max(1.0, rhs)


def random_configuration(n, rng: np.random.Generator, with_momenta=False) -> Configuration:
    """Positions (and optionally momenta) with components uniform on [-1, 1]."""
    pos = rng.uniform(-1.0, 1.0, size=(n, 3))
    mom = rng.uniform(-1.0, 1.0, size=(n, 3)) if with_momenta else None
    return Configuration(pos, mom)
