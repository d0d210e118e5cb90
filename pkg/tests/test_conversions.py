import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qperm import (
    DomainError,
    NonZeroDiagonal,
    QuboInstance,
    ValueVector,
    ascending_program,
    binary_to_bipolar,
    bipolar_to_binary,
    build_qubo,
    energy,
    fold_diagonal,
    qubo_objective,
    to_hopfield,
    to_ising,
)


def sorting_instance(values):
    x = ValueVector(values)
    return build_qubo(x, ascending_program(x.n))


def all_binary_states(N):
    return (np.array(bits, dtype=float) for bits in itertools.product((0, 1), repeat=N))


class TestFoldDiagonal:
    def test_zero_diagonal_unchanged(self):
        R = np.array(
            [
                [0.0, 1.0, 0.0, 2.0],
                [1.0, 0.0, 3.0, 0.0],
                [0.0, 3.0, 0.0, 1.0],
                [2.0, 0.0, 1.0, 0.0],
            ]
        )
        inst = QuboInstance(
            matrix_R=R,
            vector_r=np.array([2.0, 3.0, -1.0, 0.0]),
            lambda_r=1.0,
            lambda_c=1.0,
            source_n=2,
        )
        folded = fold_diagonal(inst)
        assert np.array_equal(folded.matrix_R, inst.matrix_R)
        assert np.array_equal(folded.vector_r, inst.vector_r)

    def test_sorting_instance_diagonal_moves_to_linear(self):
        inst = sorting_instance([46.0, 52.0, -12.0, 33.0, 10.0, 51.0, 24.0])
        assert np.allclose(np.diag(inst.matrix_R), 14.0)
        folded = fold_diagonal(inst)
        assert np.allclose(np.diag(folded.matrix_R), 0.0)
        assert np.allclose(folded.vector_r, inst.vector_r + 14.0)

    def test_objective_preserved_on_binary_states(self):
        inst = sorting_instance([3.0, -1.0, 2.0])
        folded = fold_diagonal(inst)
        rnd = np.random.default_rng(11)
        for _ in range(200):
            z = rnd.integers(0, 2, size=9).astype(float)
            assert qubo_objective(folded, z) == pytest.approx(
                qubo_objective(inst, z), abs=1e-9
            )


class TestToIsing:
    def test_rejects_nonzero_diagonal(self):
        inst = sorting_instance([3.0, 1.0])
        with pytest.raises(NonZeroDiagonal):
            to_ising(inst)

    def test_zero_maps_to_zero(self):
        inst = QuboInstance(
            matrix_R=np.zeros((4, 4)),
            vector_r=np.zeros(4),
            lambda_r=1.0,
            lambda_c=1.0,
            source_n=2,
        )
        ising = to_ising(inst)
        assert np.array_equal(ising.matrix_Q, np.zeros((4, 4)))
        assert np.array_equal(ising.vector_q, np.zeros(4))

    def test_coefficients(self):
        folded = fold_diagonal(sorting_instance([3.0, 1.0]))
        ising = to_ising(folded)
        assert np.allclose(ising.matrix_Q, folded.matrix_R / 4.0)
        assert np.allclose(
            ising.vector_q,
            0.5 * folded.matrix_R @ np.ones(4) + 0.5 * folded.vector_r,
        )

    def test_gap_is_state_independent(self):
        folded = fold_diagonal(sorting_instance([3.0, -1.0, 2.0]))
        ising = to_ising(folded)
        gaps = set()
        for z in all_binary_states(9):
            s = binary_to_bipolar(z)
            ising_value = float(s @ ising.matrix_Q @ s + ising.vector_q @ s)
            gaps.add(round(ising_value - qubo_objective(folded, z), 9))
        assert len(gaps) == 1


class TestToHopfield:
    def test_zero_maps_to_zero(self):
        ising = to_ising(
            QuboInstance(
                matrix_R=np.zeros((4, 4)),
                vector_r=np.zeros(4),
                lambda_r=1.0,
                lambda_c=1.0,
                source_n=2,
            )
        )
        network = to_hopfield(ising)
        assert np.array_equal(network.weights_W, np.zeros((4, 4)))
        assert np.array_equal(network.bias_theta, np.zeros(4))

    def test_energy_identity_with_ising(self):
        folded = fold_diagonal(sorting_instance([5.0, -2.0, 7.0]))
        ising = to_ising(folded)
        network = to_hopfield(ising)
        assert np.allclose(network.weights_W, -2.0 * ising.matrix_Q)
        assert np.allclose(network.bias_theta, ising.vector_q)
        rnd = np.random.default_rng(5)
        for _ in range(100):
            s = (rnd.integers(0, 2, size=9) * 2 - 1).astype(float)
            ising_value = float(s @ ising.matrix_Q @ s + ising.vector_q @ s)
            assert energy(network, s) == pytest.approx(ising_value, abs=1e-12)


class TestStateConversions:
    def test_binary_to_bipolar(self):
        assert binary_to_bipolar([0, 1]).tolist() == [-1, 1]

    def test_bipolar_to_binary(self):
        assert bipolar_to_binary([-1, -1]).tolist() == [0, 0]

    def test_out_of_alphabet_rejected(self):
        with pytest.raises(DomainError):
            binary_to_bipolar([0, 2])
        with pytest.raises(DomainError):
            bipolar_to_binary([0, 1])

    @given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=30))
    @settings(max_examples=50)
    def test_round_trip(self, bits):
        z = np.array(bits)
        assert np.array_equal(bipolar_to_binary(binary_to_bipolar(z)), z)
        s = binary_to_bipolar(z)
        assert np.array_equal(binary_to_bipolar(bipolar_to_binary(s)), s)


class TestEndToEndMinimizers:
    @pytest.mark.parametrize("values", [[3.0, 1.0], [3.0, 1.0, 2.0]])
    def test_argmin_agrees_across_representations(self, values):
        inst = sorting_instance(values)
        folded = fold_diagonal(inst)
        network = to_hopfield(to_ising(folded))
        N = inst.dimension
        best_q, best_h = None, None
        for z in all_binary_states(N):
            qv = qubo_objective(inst, z)
            hv = energy(network, binary_to_bipolar(z))
            if best_q is None or qv < best_q[0] - 1e-12:
                best_q = (qv, tuple(z))
            if best_h is None or hv < best_h[0] - 1e-12:
                best_h = (hv, tuple(z))
        assert best_q[1] == best_h[1]
