"""Brute-force ground truth and certification.

best_permutation scores every one of the n! arrangements directly on the
raw input values; exhaustive_qubo_min scores every one of the 2^N binary
states of a compiled instance.  Neither knows anything about how the
solver searches, which is the point: certify compares a solver state
against answers obtained by a route it cannot share.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NonSquareLength, NotAPermutation, SizeBudgetExceeded
from .model import (
    OrderProgram,
    PermutationMatrix,
    QuboInstance,
    ValueVector,
    apply_permutation,
    decode_permutation,
)
from .programs import TreeShape, validate_bst, validate_heap

MAX_ORACLE_N = 10
MAX_EXHAUSTIVE_BITS = 20

_PERM_CHUNK = 40320
_STATE_CHUNK = 1 << 16

_OBJECTIVE_REL_TOL = 1e-9
_OBJECTIVE_ABS_TOL = 1e-9


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of checking one solver state against brute force.

    structure_valid is None when the program kind carries no tree
    structure to check.  achieved_objective and mapping are None when the
    state does not decode to a permutation.
    """

    feasible: bool
    optimal: bool
    achieved_objective: Optional[float]
    best_objective: float
    mapping: Optional[tuple[int, ...]]
    structure_valid: Optional[bool]
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.feasible and self.optimal and self.structure_valid is not False


def best_permutation(x: ValueVector, program: OrderProgram) -> tuple[PermutationMatrix, float]:
    """Enumerate all n! mappings and return one minimizing -x^T P^T ranks.

    Ties go to the lexicographically smallest mapping.  Guarded at
    n <= 10.
    """
    n = x.n
    if program.n != n:
        raise DimensionMismatch(f"x has {n} entries but the program has {program.n} slots")
    if n > MAX_ORACLE_N:
        raise SizeBudgetExceeded(f"n={n} exceeds the n<={MAX_ORACLE_N} enumeration budget")
    values = x.entries
    ranks = np.asarray(program.ranks, dtype=float)
    best_value = math.inf
    best_mapping: Optional[tuple[int, ...]] = None
    mappings = itertools.permutations(range(n))
    while True:
        chunk = tuple(itertools.islice(mappings, _PERM_CHUNK))
        if not chunk:
            break
        arr = np.array(chunk, dtype=np.intp)
        scores = -(values[arr] @ ranks)
        k = int(np.argmin(scores))  # first minimum: lexicographically smallest
        if float(scores[k]) < best_value:
            best_value = float(scores[k])
            best_mapping = tuple(int(c) for c in chunk[k])
    matrix = np.zeros((n, n), dtype=int)
    matrix[np.arange(n), list(best_mapping)] = 1
    return PermutationMatrix(matrix), best_value


def exhaustive_qubo_min(instance: QuboInstance) -> tuple[np.ndarray, float]:
    """Enumerate all 2^N binary states and return a global minimizer.

    State k has coordinate j equal to bit j of k; ties go to the
    smallest k.  Guarded at N <= 20.
    """
    N = instance.dimension
    if N > MAX_EXHAUSTIVE_BITS:
        raise SizeBudgetExceeded(f"N={N} exceeds the N<={MAX_EXHAUSTIVE_BITS} enumeration budget")
    R = instance.matrix_R
    r = instance.vector_r
    bits = np.arange(N)
    total = 1 << N
    best_value = math.inf
    best_state: Optional[np.ndarray] = None
    for start in range(0, total, _STATE_CHUNK):
        ks = np.arange(start, min(start + _STATE_CHUNK, total), dtype=np.int64)
        Z = ((ks[:, None] >> bits) & 1).astype(float)
        values = ((Z @ R) * Z).sum(axis=1) + Z @ r
        k = int(np.argmin(values))
        if float(values[k]) < best_value:
            best_value = float(values[k])
            best_state = Z[k].astype(int)
    return best_state, best_value


def certify(
    x: ValueVector,
    program: OrderProgram,
    config=None,
    solver_state=None,
) -> CertificateReport:
    """Check a binary solver state for feasibility, optimality, and structure.

    A state that fails to decode yields a failed certificate rather than
    an exception.  Optimality compares the achieved -x^T P^T ranks to the
    enumeration optimum at relative/absolute tolerance 1e-9.  For bst and
    heap programs the arranged values must also pass the matching
    structure validator; other kinds skip that check (structure_valid is
    None).  `config` is accepted for signature symmetry with the build
    step and is not consulted.
    """
    ranks = np.asarray(program.ranks, dtype=float)
    _, best_value = best_permutation(x, program)
    notes: list[str] = []
    if len(np.unique(x.entries)) < x.n:
        notes.append("objective-tie: duplicate input values admit several optimal arrangements")
    try:
        p = decode_permutation(solver_state)
        if p.n != x.n:
            raise NotAPermutation(f"state encodes {p.n} slots but x has {x.n} entries")
    except (NotAPermutation, NonSquareLength) as exc:
        notes.append(f"decode failed: {exc}")
        return CertificateReport(
            feasible=False,
            optimal=False,
            achieved_objective=None,
            best_objective=best_value,
            mapping=None,
            structure_valid=None,
            notes=tuple(notes),
        )
    arranged = apply_permutation(p, x)
    achieved = -float(arranged @ ranks)
    optimal = math.isclose(
        achieved, best_value, rel_tol=_OBJECTIVE_REL_TOL, abs_tol=_OBJECTIVE_ABS_TOL
    )
    structure_valid: Optional[bool] = None
    if program.kind in ("bst", "heap"):
        shape = TreeShape(x.n, program.branching)
        checker = validate_bst if program.kind == "bst" else validate_heap
        structure_valid = checker(arranged, shape)
    return CertificateReport(
        feasible=True,
        optimal=optimal,
        achieved_objective=achieved,
        best_objective=best_value,
        mapping=p.as_mapping,
        structure_valid=structure_valid,
        notes=tuple(notes),
    )
