"""Core value types and encoding conventions for the ordering pipeline.

Every other module (builder, conversions, solver, oracle, CLI) speaks in
terms of these types.  Instances are frozen and their arrays are marked
read-only, so they can be shared freely between threads and calls.

Conventions fixed here once and relied on everywhere:

* vectorization stacks matrix columns (Fortran order), and matricization
  is its exact inverse;
* a solver state z of length n*n encodes the permutation matrix
  P = matricize(z), whose row i holds its single 1 in column
  as_mapping[i], so applying P reads y[i] = x[as_mapping[i]];
* binary vectors live in {0, 1}, bipolar states in {-1, +1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    InvalidSize,
    NonSquareLength,
    NonZeroDiagonal,
    NotAPermutation,
)

SYMMETRY_TOL = 1e-12

PROGRAM_KINDS = ("ascending", "descending", "bst", "heap", "custom")


def _readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def _require_symmetric(matrix: np.ndarray, name: str) -> None:
    gap = float(np.abs(matrix - matrix.T).max(initial=0.0))
    if gap > SYMMETRY_TOL:
        raise DomainError(f"{name} must be symmetric; max asymmetry {gap:.3e}")


@dataclass(frozen=True, eq=False)
class ValueVector:
    """An input vector together with its L1-normalized copy.

    normalized_entries equals entries / sum(|entries|) and is None when
    that sum is zero (no normalization exists).  The field is derived in
    the constructor; any value passed for it is ignored.
    """

    entries: np.ndarray
    normalized_entries: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        entries = _readonly(self.entries)
        if entries.ndim != 1 or entries.size == 0:
            raise InvalidSize("need a one-dimensional vector with at least one entry")
        if not np.all(np.isfinite(entries)):
            raise DomainError("entries must be finite")
        scale = float(np.abs(entries).sum())
        normalized = _readonly(entries / scale) if scale > 0.0 else None
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "normalized_entries", normalized)

    @property
    def n(self) -> int:
        return int(self.entries.size)


@dataclass(frozen=True)
class OrderProgram:
    """A target arrangement, given as the rank each output slot receives.

    ranks is a permutation of 1..n; output slot i is meant to hold the
    ranks[i]-th smallest input value.  kind records how the vector was
    generated; branching is the tree arity where that applies.
    """

    ranks: tuple[int, ...]
    kind: str = "custom"
    branching: int = 2

    def __post_init__(self):
        ranks = tuple(int(v) for v in self.ranks)
        if len(ranks) < 1:
            raise InvalidSize("a program needs at least one slot")
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise NotAPermutation("ranks must be a permutation of 1..n")
        if self.kind not in PROGRAM_KINDS:
            raise DomainError(f"unknown program kind {self.kind!r}")
        if int(self.branching) < 2:
            raise DomainError("branching must be at least 2")
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "branching", int(self.branching))

    @property
    def n(self) -> int:
        return len(self.ranks)


@dataclass(frozen=True, eq=False)
class QuboInstance:
    """Minimize z^T R z + r^T z over binary z of length source_n squared."""

    matrix_R: np.ndarray
    vector_r: np.ndarray
    lambda_r: float
    lambda_c: float
    source_n: int

    def __post_init__(self):
        R = _readonly(self.matrix_R)
        r = _readonly(self.vector_r)
        if R.ndim != 2 or R.shape[0] != R.shape[1] or r.shape != (R.shape[0],):
            raise DimensionMismatch("matrix_R must be square and match vector_r")
        if R.shape[0] != int(self.source_n) ** 2:
            raise DimensionMismatch(
                f"dimension {R.shape[0]} is not source_n**2 for source_n={self.source_n}"
            )
        _require_symmetric(R, "matrix_R")
        object.__setattr__(self, "matrix_R", R)
        object.__setattr__(self, "vector_r", r)
        object.__setattr__(self, "lambda_r", float(self.lambda_r))
        object.__setattr__(self, "lambda_c", float(self.lambda_c))
        object.__setattr__(self, "source_n", int(self.source_n))

    @property
    def dimension(self) -> int:
        return int(self.vector_r.size)


@dataclass(frozen=True, eq=False)
class IsingInstance:
    """Energy s^T Q s + q^T s over bipolar s; Q keeps an exactly zero diagonal."""

    matrix_Q: np.ndarray
    vector_q: np.ndarray

    def __post_init__(self):
        Q = _readonly(self.matrix_Q)
        q = _readonly(self.vector_q)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or q.shape != (Q.shape[0],):
            raise DimensionMismatch("matrix_Q must be square and match vector_q")
        _require_symmetric(Q, "matrix_Q")
        if np.any(np.diag(Q) != 0.0):
            raise NonZeroDiagonal("matrix_Q must have an exactly zero diagonal")
        object.__setattr__(self, "matrix_Q", Q)
        object.__setattr__(self, "vector_q", q)

    @property
    def dimension(self) -> int:
        return int(self.vector_q.size)


@dataclass(frozen=True, eq=False)
class HopfieldInstance:
    """Energy -1/2 s^T W s + theta^T s over bipolar s, with zero self-coupling."""

    weights_W: np.ndarray
    bias_theta: np.ndarray

    def __post_init__(self):
        W = _readonly(self.weights_W)
        theta = _readonly(self.bias_theta)
        if W.ndim != 2 or W.shape[0] != W.shape[1] or theta.shape != (W.shape[0],):
            raise DimensionMismatch("weights_W must be square and match bias_theta")
        _require_symmetric(W, "weights_W")
        if np.any(np.diag(W) != 0.0):
            raise DomainError("weights_W must have an exactly zero diagonal")
        object.__setattr__(self, "weights_W", W)
        object.__setattr__(self, "bias_theta", theta)

    @property
    def dimension(self) -> int:
        return int(self.bias_theta.size)


@dataclass(frozen=True, eq=False)
class PermutationMatrix:
    """An n x n binary matrix with exactly one 1 per row and per column.

    as_mapping[i] is the column of the 1 in row i; it is derived from the
    matrix on construction.
    """

    matrix: np.ndarray
    as_mapping: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        M = np.asarray(self.matrix)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
            raise NotAPermutation("need a non-empty square matrix")
        if not np.isin(M, (0, 1)).all():
            raise NotAPermutation("entries must be 0 or 1")
        M = M.astype(int)
        if np.any(M.sum(axis=0) != 1) or np.any(M.sum(axis=1) != 1):
            raise NotAPermutation("every row and column must contain exactly one 1")
        mapping = tuple(int(c) for c in np.nonzero(M)[1])
        object.__setattr__(self, "matrix", _readonly(M, dtype=int))
        object.__setattr__(self, "as_mapping", mapping)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class TraceStep:
    """One row of a descent record: step index, bipolar state, energy."""

    index: int
    state: np.ndarray
    energy: float

    def __post_init__(self):
        state = _readonly(self.state, dtype=np.int8)
        if not np.isin(state, (-1, 1)).all():
            raise DomainError("trace states must be bipolar")
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "energy", float(self.energy))


@dataclass(frozen=True, eq=False)
class SolverTrace:
    """A full descent record, ending in one repeated stable row.

    Consecutive states differ in at most one coordinate and the energy
    strictly decreases from row to row, except that the final row repeats
    its predecessor to make the stability of the endpoint visible.
    """

    steps: tuple[TraceStep, ...]
    converged: bool
    flips: int

    def __post_init__(self):
        steps = tuple(self.steps)
        if not steps:
            raise InvalidSize("a trace needs at least one row")
        flipped = 0
        for k in range(1, len(steps)):
            prev, cur = steps[k - 1], steps[k]
            ndiff = int(np.sum(prev.state != cur.state))
            if ndiff > 1:
                raise DomainError("consecutive trace states may differ in one coordinate only")
            flipped += ndiff
            last = k == len(steps) - 1
            repeated = last and ndiff == 0 and cur.energy == prev.energy
            if cur.energy >= prev.energy and not repeated:
                raise DomainError("trace energies must strictly decrease before the final repeat")
        if flipped != int(self.flips):
            raise DomainError(f"flips={self.flips} but the states record {flipped} flips")
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "flips", int(self.flips))
        object.__setattr__(self, "converged", bool(self.converged))

    @property
    def final_state(self) -> np.ndarray:
        return self.steps[-1].state

    @property
    def final_energy(self) -> float:
        return self.steps[-1].energy


def vectorize(matrix) -> np.ndarray:
    """Stack the columns of a square matrix into one vector."""
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch("vectorize expects a square matrix")
    return M.ravel(order="F")


def matricize(vector) -> np.ndarray:
    """Invert vectorize: rebuild the n x n matrix column by column."""
    v = np.asarray(vector, dtype=float).ravel()
    n = math.isqrt(v.size)
    if v.size == 0 or n * n != v.size:
        raise NonSquareLength(f"length {v.size} is not a positive perfect square")
    return v.reshape((n, n), order="F")


def decode_permutation(z_star) -> PermutationMatrix:
    """Read the permutation matrix P encoded by a binary solver state.

    Parameters
    ----------
    z_star : array_like
        Binary vector of length n*n, column-stacked.

    Returns
    -------
    PermutationMatrix
        P = matricize(z_star).  P acts on the original input vector as
        y = P x, i.e. y[i] = x[P.as_mapping[i]].

    Raises
    ------
    NonSquareLength
        If the length is not a positive perfect square.
    NotAPermutation
        If the state is not binary or the matrix is not a permutation.
        The state is never repaired.
    """
    M = matricize(z_star)
    if not np.isin(M, (0.0, 1.0)).all():
        raise NotAPermutation("state entries must be 0 or 1")
    return PermutationMatrix(M.astype(int))


def apply_permutation(p: PermutationMatrix, x: ValueVector) -> np.ndarray:
    """Arrange x by p: output slot i receives x.entries[p.as_mapping[i]].

    Always reads the raw (un-normalized) entries.
    """
    if p.n != x.n:
        raise DimensionMismatch(f"permutation is {p.n}x{p.n} but x has {x.n} entries")
    return _readonly(x.entries[list(p.as_mapping)])
