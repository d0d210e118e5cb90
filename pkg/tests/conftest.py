import numpy as np
import pytest

from qperm import (
    SolverConfig,
    ValueVector,
    ascending_program,
    bipolar_to_binary,
    bst_program,
    build_qubo,
    fold_diagonal,
    heap_program,
    solve,
    to_hopfield,
    to_ising,
)

from . import reference_run as ref


@pytest.fixture
def reference_x():
    return ValueVector(ref.INPUT_X)


@pytest.fixture(params=["ascending", "bst", "heap"])
def program_kind(request):
    return request.param


def make_program(kind, n):
    if kind == "ascending":
        return ascending_program(n)
    if kind == "bst":
        return bst_program(n)
    if kind == "heap":
        return heap_program(n)
    raise ValueError(kind)


def run_pipeline(x, program, config=None, feasibility_check=None):
    """Build, convert, and descend; returns (binary state, trace, instance)."""
    instance = build_qubo(x, program)
    network = to_hopfield(to_ising(fold_diagonal(instance)))
    state, trace = solve(network, config or SolverConfig(), feasibility_check)
    return bipolar_to_binary(state), trace, instance


def flip_positions(trace):
    """Coordinate flipped at each non-final step."""
    out = []
    for before, after in zip(trace.steps, trace.steps[1:]):
        diff = np.nonzero(before.state != after.state)[0]
        if diff.size:
            out.append(int(diff[0]))
    return out
