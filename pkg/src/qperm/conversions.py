"""Lossless moves between the QUBO, Ising, and Hopfield forms.

fold_diagonal uses z*z = z on binary states to push the diagonal of R
into the linear term.  to_ising substitutes z = (s+1)/2 on a zero
diagonal.  to_hopfield only renames: W = -2Q and theta = q, which makes
-1/2 s^T W s + theta^T s literally equal to s^T Q s + q^T s.  Each hop
shifts the objective by a state-independent constant at most, so
minimizers carry over through the whole chain.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NonZeroDiagonal
from .model import HopfieldInstance, IsingInstance, QuboInstance


def fold_diagonal(instance: QuboInstance) -> QuboInstance:
    """Zero the diagonal of R, compensating in r; exact on binary states."""
    diag = np.diag(instance.matrix_R).copy()
    return QuboInstance(
        matrix_R=instance.matrix_R - np.diag(diag),
        vector_r=instance.vector_r + diag,
        lambda_r=instance.lambda_r,
        lambda_c=instance.lambda_c,
        source_n=instance.source_n,
    )


def to_ising(instance: QuboInstance) -> IsingInstance:
    """Substitute z = (s+1)/2: Q = R/4 and q = R@1/2 + r/2.

    Requires an exactly zero diagonal; apply fold_diagonal first.  The
    dropped constant is 1^T R 1 / 4 + r^T 1 / 2.
    """
    R = instance.matrix_R
    if np.any(np.diag(R) != 0.0):
        raise NonZeroDiagonal("fold_diagonal must run before the bipolar substitution")
    ones = np.ones(instance.dimension)
    return IsingInstance(matrix_Q=R / 4.0, vector_q=0.5 * (R @ ones) + 0.5 * instance.vector_r)


def to_hopfield(instance: IsingInstance) -> HopfieldInstance:
    """Rename to network form: W = -2Q, theta = q; energies are identical."""
    return HopfieldInstance(weights_W=-2.0 * instance.matrix_Q, bias_theta=instance.vector_q)


def binary_to_bipolar(z) -> np.ndarray:
    """Map {0,1} to {-1,+1} via s = 2z - 1."""
    zv = np.asarray(z)
    if not np.isin(zv, (0, 1)).all():
        raise DomainError("expected entries in {0, 1}")
    return (2 * zv.astype(int) - 1).astype(np.int8)


def bipolar_to_binary(s) -> np.ndarray:
    """Map {-1,+1} to {0,1} via z = (s + 1) / 2."""
    sv = np.asarray(s)
    if not np.isin(sv, (-1, 1)).all():
        raise DomainError("expected entries in {-1, +1}")
    return ((sv.astype(int) + 1) // 2).astype(np.int8)
