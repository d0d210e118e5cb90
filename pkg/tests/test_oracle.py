import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qperm import (
    QuboInstance,
    SizeBudgetExceeded,
    ValueVector,
    ascending_program,
    best_permutation,
    bst_program,
    build_qubo,
    certify,
    decode_permutation,
    exhaustive_qubo_min,
    fold_diagonal,
    heap_program,
    vectorize,
)

from . import reference_run as ref
from .conftest import make_program, run_pipeline


class TestBestPermutation:
    def test_sorting_semantics(self):
        p, _ = best_permutation(ValueVector([3.0, 1.0, 2.0]), ascending_program(3))
        x = ValueVector([3.0, 1.0, 2.0])
        arranged = [x.entries[c] for c in p.as_mapping]
        assert arranged == [1.0, 2.0, 3.0]

    def test_reference_heap_arrangement(self):
        x = ValueVector(ref.INPUT_X)
        p, _ = best_permutation(x, heap_program(7))
        arranged = [float(x.entries[c]) for c in p.as_mapping]
        assert arranged == ref.EXPECTED_Y["heap"]

    def test_reference_sorting_mapping(self):
        p, _ = best_permutation(ValueVector(ref.INPUT_X), ascending_program(7))
        assert p.as_mapping == ref.EXPECTED_MAPPING["ascending"]

    def test_duplicates_take_lexicographically_smallest(self):
        p, _ = best_permutation(ValueVector([5.0, 5.0]), ascending_program(2))
        assert p.as_mapping == (0, 1)

    def test_objective_value(self):
        x = ValueVector([3.0, 1.0])
        _, value = best_permutation(x, ascending_program(2))
        # best pairing on raw entries: 1*1 + 3*2
        assert value == pytest.approx(-7.0)

    def test_size_guard(self):
        with pytest.raises(SizeBudgetExceeded):
            best_permutation(ValueVector(list(range(1, 12))), ascending_program(11))

    @given(
        st.integers(min_value=1, max_value=6),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=40, deadline=None)
    def test_matches_comparison_sort(self, n, rnd):
        values = rnd.sample(range(-500, 500), n)
        x = ValueVector([float(v) for v in values])
        p, _ = best_permutation(x, ascending_program(n))
        arranged = [float(x.entries[c]) for c in p.as_mapping]
        assert arranged == sorted(float(v) for v in values)


class TestExhaustiveQuboMin:
    def test_positive_linear_term_keeps_zero(self):
        inst = QuboInstance(
            matrix_R=np.zeros((4, 4)),
            vector_r=np.ones(4),
            lambda_r=1.0,
            lambda_c=1.0,
            source_n=2,
        )
        z, value = exhaustive_qubo_min(inst)
        assert z.tolist() == [0, 0, 0, 0]
        assert value == 0.0

    def test_negative_linear_term_fills_ones(self):
        inst = QuboInstance(
            matrix_R=np.zeros((4, 4)),
            vector_r=-np.ones(4),
            lambda_r=1.0,
            lambda_c=1.0,
            source_n=2,
        )
        z, value = exhaustive_qubo_min(inst)
        assert z.tolist() == [1, 1, 1, 1]
        assert value == -4.0

    def test_tie_breaks_to_smallest_encoding(self):
        inst = QuboInstance(
            matrix_R=np.zeros((4, 4)),
            vector_r=np.zeros(4),
            lambda_r=1.0,
            lambda_c=1.0,
            source_n=2,
        )
        z, value = exhaustive_qubo_min(inst)
        assert z.tolist() == [0, 0, 0, 0]
        assert value == 0.0

    def test_minimizer_is_sorting_permutation(self):
        x = ValueVector([3.0, 1.0, 2.0])
        inst = build_qubo(x, ascending_program(3))
        z, _ = exhaustive_qubo_min(inst)
        p = decode_permutation(z)
        assert [float(x.entries[c]) for c in p.as_mapping] == [1.0, 2.0, 3.0]

    def test_agrees_with_best_permutation_objective(self):
        x = ValueVector([3.0, 1.0, 2.0])
        inst = build_qubo(x, ascending_program(3))
        _, value = exhaustive_qubo_min(inst)
        zp, best_value = best_permutation(x, ascending_program(3))
        from qperm import qubo_objective

        assert value == pytest.approx(qubo_objective(inst, vectorize(zp.matrix)))

    def test_size_guard(self):
        inst = QuboInstance(
            matrix_R=np.zeros((25, 25)),
            vector_r=np.zeros(25),
            lambda_r=1.0,
            lambda_c=1.0,
            source_n=5,
        )
        with pytest.raises(SizeBudgetExceeded):
            exhaustive_qubo_min(inst)


class TestCertify:
    def test_reference_sorting_run_passes(self, reference_x):
        program = ascending_program(7)
        z, _, _ = run_pipeline(reference_x, program)
        report = certify(reference_x, program, None, z)
        assert report.feasible
        assert report.optimal
        assert report.structure_valid is None
        assert report.passed
        assert report.mapping == ref.EXPECTED_MAPPING["ascending"]

    def test_reference_tree_run_checks_structure(self, reference_x):
        program = bst_program(7)
        z, _, _ = run_pipeline(reference_x, program)
        report = certify(reference_x, program, None, z)
        assert report.passed
        assert report.structure_valid is True

    def test_corrupted_state_fails_without_raising(self, reference_x):
        program = ascending_program(7)
        z, _, _ = run_pipeline(reference_x, program)
        z = z.copy()
        z[np.argmin(z)] = 1  # one extra active neuron
        report = certify(reference_x, program, None, z)
        assert not report.feasible
        assert not report.passed
        assert any("decode failed" in note for note in report.notes)

    def test_feasible_but_suboptimal(self):
        x = ValueVector([3.0, 1.0])
        identity = np.eye(2)
        report = certify(x, ascending_program(2), None, vectorize(identity))
        assert report.feasible
        assert not report.optimal
        assert not report.passed
        assert report.achieved_objective > report.best_objective

    def test_duplicate_values_noted(self):
        x = ValueVector([5.0, 5.0])
        report = certify(x, ascending_program(2), None, vectorize(np.eye(2)))
        assert report.optimal
        assert any("objective-tie" in note for note in report.notes)

    def test_wrong_state_size_fails(self, reference_x):
        report = certify(reference_x, ascending_program(7), None, vectorize(np.eye(2)))
        assert not report.feasible

    def test_heap_structure_failure_detected(self):
        # feasible permutation, wrong shape for a max-heap
        x = ValueVector([1.0, 2.0, 3.0])
        report = certify(x, heap_program(3), None, vectorize(np.eye(3)))
        assert report.feasible
        assert report.structure_valid is False
        assert not report.passed
