"""Ordering tasks compiled to QUBO form and solved by Hopfield descent.

Pick a target arrangement (sorted order, search-tree layout, heap
layout), compile it together with an input vector into a quadratic
binary objective, relax that objective on a Hopfield network by steepest
single-flip descent, and certify the decoded permutation against
brute-force enumeration.
"""

from .builder import BuilderConfig, build_Cc, build_Cr, build_N, build_qubo, qubo_objective
from .conversions import (
    binary_to_bipolar,
    bipolar_to_binary,
    fold_diagonal,
    to_hopfield,
    to_ising,
)
from .errors import (
    DimensionMismatch,
    DomainError,
    IndexOutOfRange,
    InvalidSize,
    MaxStepsExceeded,
    NonSquareLength,
    NonZeroDiagonal,
    NotAPermutation,
    QpermError,
    SizeBudgetExceeded,
    UnsupportedBranching,
    ZeroVector,
)
from .hopfield import ALL_INACTIVE, RANDOM, SolverConfig, energy, flip_gain, solve
from .model import (
    HopfieldInstance,
    IsingInstance,
    OrderProgram,
    PermutationMatrix,
    QuboInstance,
    SolverTrace,
    TraceStep,
    ValueVector,
    apply_permutation,
    decode_permutation,
    matricize,
    vectorize,
)
from .oracle import (
    CertificateReport,
    best_permutation,
    certify,
    exhaustive_qubo_min,
)
from .programs import (
    TreeShape,
    ascending_program,
    bst_program,
    descending_program,
    heap_program,
    validate_bst,
    validate_heap,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_INACTIVE",
    "RANDOM",
    "BuilderConfig",
    "CertificateReport",
    "DimensionMismatch",
    "DomainError",
    "HopfieldInstance",
    "IndexOutOfRange",
    "InvalidSize",
    "IsingInstance",
    "MaxStepsExceeded",
    "NonSquareLength",
    "NonZeroDiagonal",
    "NotAPermutation",
    "OrderProgram",
    "PermutationMatrix",
    "QpermError",
    "QuboInstance",
    "SizeBudgetExceeded",
    "SolverConfig",
    "SolverTrace",
    "TraceStep",
    "TreeShape",
    "UnsupportedBranching",
    "ValueVector",
    "ZeroVector",
    "apply_permutation",
    "ascending_program",
    "best_permutation",
    "binary_to_bipolar",
    "bipolar_to_binary",
    "bst_program",
    "build_Cc",
    "build_Cr",
    "build_N",
    "build_qubo",
    "certify",
    "decode_permutation",
    "descending_program",
    "energy",
    "exhaustive_qubo_min",
    "flip_gain",
    "fold_diagonal",
    "heap_program",
    "matricize",
    "qubo_objective",
    "solve",
    "to_hopfield",
    "to_ising",
    "validate_bst",
    "validate_heap",
    "vectorize",
]
