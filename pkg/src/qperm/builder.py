"""Compile an input vector and an order program into a QUBO.

A candidate arrangement is a binary matrix Z with one 1 per row and per
column, flattened column-wise into z.  The compiled objective

    f(z) = z^T R z + r^T z

rewards activating cell (row b, column a) with -x[a] * ranks[b], so the
minimizer pairs the largest values with the highest ranks, and penalizes
row and column sums away from one.  The pieces are Kronecker products:

    N   = I (x) ranks^T          rank reward,     N @ z = Z^T @ ranks
    C_r = 1^T (x) I              row sums,      C_r @ z = Z @ 1
    C_c = I (x) 1^T              column sums,   C_c @ z = Z^T @ 1
    R   = lam_r C_r^T C_r + lam_c C_c^T C_c
    r   = -N^T x - 2 (lam_r C_r + lam_c C_c)^T 1

Both penalty weights default to n with the input L1-normalized, the
setting every bundled test runs with.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidSize, ZeroVector
from .model import OrderProgram, QuboInstance, ValueVector


@dataclass(frozen=True)
class BuilderConfig:
    """Penalty weights and the normalization switch for build_qubo."""

    lambda_r: float
    lambda_c: float
    normalize: bool = True

    def __post_init__(self):
        if not (self.lambda_r > 0.0 and self.lambda_c > 0.0):
            raise DomainError("penalty weights must be positive")


def build_N(program: OrderProgram) -> np.ndarray:
    """Rank reward matrix, n rows by n*n columns, block diagonal.

    Row i holds the program's ranks in columns i*n .. i*n+n-1, so that
    build_N(p) @ vectorize(Z) equals Z.T @ ranks.
    """
    ranks = np.asarray(program.ranks, dtype=float)
    return np.kron(np.eye(program.n), ranks[None, :])


def build_Cr(n: int) -> np.ndarray:
    """Row-sum reader: build_Cr(n) @ vectorize(Z) equals Z @ 1."""
    if n < 1:
        raise InvalidSize("n must be at least 1")
    return np.kron(np.ones((1, n)), np.eye(n))


def build_Cc(n: int) -> np.ndarray:
    """Column-sum reader: build_Cc(n) @ vectorize(Z) equals Z.T @ 1."""
    if n < 1:
        raise InvalidSize("n must be at least 1")
    return np.kron(np.eye(n), np.ones((1, n)))


def build_qubo(
    x: ValueVector,
    program: OrderProgram,
    config: Optional[BuilderConfig] = None,
) -> QuboInstance:
    """Assemble the QUBO whose binary minimizer encodes the programmed order.

    Parameters
    ----------
    x : ValueVector
        Input values; by default the L1-normalized copy feeds the reward.
    program : OrderProgram
        Rank vector of the same length as x.
    config : BuilderConfig, optional
        Defaults to lambda_r = lambda_c = n with normalization on.

    Raises
    ------
    DimensionMismatch
        If x and the program disagree on n.
    ZeroVector
        If normalization is on and x is all zero.
    """
    n = program.n
    if x.n != n:
        raise DimensionMismatch(f"x has {x.n} entries but the program has {n} slots")
    if config is None:
        config = BuilderConfig(lambda_r=float(n), lambda_c=float(n))
    if config.normalize:
        if x.normalized_entries is None:
            raise ZeroVector("cannot normalize an all-zero input vector")
        values = x.normalized_entries
    else:
        values = x.entries

    N = build_N(program)
    Cr = build_Cr(n)
    Cc = build_Cc(n)
    R = config.lambda_r * (Cr.T @ Cr) + config.lambda_c * (Cc.T @ Cc)
    ones = np.ones(n)
    r = -(N.T @ values) - 2.0 * ((config.lambda_r * Cr + config.lambda_c * Cc).T @ ones)
    return QuboInstance(
        matrix_R=R,
        vector_r=r,
        lambda_r=config.lambda_r,
        lambda_c=config.lambda_c,
        source_n=n,
    )


def qubo_objective(instance: QuboInstance, z) -> float:
    """Evaluate z^T R z + r^T z at a binary state z."""
    zv = np.asarray(z, dtype=float).ravel()
    if zv.size != instance.dimension:
        raise DimensionMismatch(
            f"state has {zv.size} coordinates, instance has {instance.dimension}"
        )
    if not np.isin(zv, (0.0, 1.0)).all():
        raise DomainError("objective is defined on binary states")
    return float(zv @ instance.matrix_R @ zv + instance.vector_r @ zv)
