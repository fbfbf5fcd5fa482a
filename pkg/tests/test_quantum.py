"""Tests for the exact quantum objects and overlap oracles."""
import unittest
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ontoscope.errors import (
    DimensionMismatchError, InvalidOperatorError, NormalizationError, OntoscopeError
)
from ontoscope.models.quantum import (
    DensityOperator, Effect, QuantumState, QubitObservable,
    born_probability, haar_random_state, overlap_sq, quantum_overlap,
    projectors_of, same_state, state_of, trace_distance_pure, trine_observables,
)


class TestQuantumState(unittest.TestCase):

    def test_named_states_are_normalized(self):
        for label in ("0", "1", "+", "-", "+i", "-i"):
            state = QuantumState.from_label(label)
            self.assertAlmostEqual(float(np.vdot(state.amplitudes, state.amplitudes).real), 1.0, places=12)

    def test_unnormalized_state_rejected(self):
        with self.assertRaises(NormalizationError):
            QuantumState(np.array([1.0, 1.0]))

    def test_small_drift_is_renormalized(self):
        state = QuantumState(np.array([1.0 + 1e-8, 0.0]))
        self.assertAlmostEqual(abs(state.amplitudes[0]), 1.0, places=12)

    def test_dimension_one_rejected(self):
        with self.assertRaises(DimensionMismatchError):
            QuantumState(np.array([1.0]))

    def test_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            QuantumState(np.array([2.0, 0.0]))
        self.assertTrue(issubclass(OntoscopeError, ValueError))

    def test_bloch_vectors_of_basis_states(self):
        np.testing.assert_allclose(QuantumState.from_label("0").bloch_vector(), [0, 0, 1], atol=1e-12)
        np.testing.assert_allclose(QuantumState.from_label("+").bloch_vector(), [1, 0, 0], atol=1e-12)
        np.testing.assert_allclose(QuantumState.from_label("+i").bloch_vector(), [0, 1, 0], atol=1e-12)

    def test_from_bloch_roundtrip(self):
        v = np.array([0.3, -0.4, 0.2])
        state = QuantumState.from_bloch(v)
        np.testing.assert_allclose(state.bloch_vector(), v / np.linalg.norm(v), atol=1e-12)

    def test_orthogonal_state(self):
        psi = QuantumState.from_label("+")
        perp = psi.orthogonal()
        self.assertEqual(perp.label, "+_perp")
        self.assertLess(overlap_sq(psi, perp), 1e-15)
        self.assertTrue(same_state(perp, QuantumState.from_label("-")))


class TestOperators(unittest.TestCase):

    def test_non_hermitian_density_rejected(self):
        with self.assertRaises(InvalidOperatorError):
            DensityOperator(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_negative_eigenvalue_rejected(self):
        with self.assertRaises(InvalidOperatorError):
            DensityOperator(np.array([[1.5, 0.0], [0.0, -0.5]]))

    def test_maximally_mixed_from_basis_mixture(self):
        rho = DensityOperator.mix([0.5, 0.5], [QuantumState.from_label("+").density(),
                                               QuantumState.from_label("-").density()])
        self.assertTrue(rho.approx_equal(DensityOperator.maximally_mixed(2)))
        self.assertFalse(rho.is_pure())
        self.assertAlmostEqual(rho.purity(), 0.5)

    def test_effect_bounds(self):
        with self.assertRaises(InvalidOperatorError):
            Effect(np.eye(2) * 1.5)
        effect = QuantumState.from_label("0").projector()
        np.testing.assert_allclose(effect.complement().matrix, np.diag([0, 1]), atol=1e-15)

    def test_state_of_recovers_pure_state(self):
        psi = QuantumState.from_label("-i")
        self.assertTrue(same_state(state_of(psi.density()), psi))
        self.assertIsNone(state_of(DensityOperator.maximally_mixed(2)))


class TestOverlapOracles(unittest.TestCase):

    def test_quantum_overlap_zero_plus(self):
        value = quantum_overlap(QuantumState.from_label("0"), QuantumState.from_label("+"))
        self.assertAlmostEqual(value, 1.0 - 1.0 / np.sqrt(2.0), places=12)

    def test_quantum_overlap_extremes(self):
        zero = QuantumState.from_label("0")
        self.assertAlmostEqual(quantum_overlap(zero, zero), 1.0, places=12)
        self.assertAlmostEqual(quantum_overlap(zero, QuantumState.from_label("1")), 0.0, places=12)
        self.assertAlmostEqual(trace_distance_pure(zero, QuantumState.from_label("1")), 1.0, places=12)

    def test_overlap_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            overlap_sq(QuantumState.from_label("0"), QuantumState(np.array([1.0, 0.0, 0.0])))

    def test_born_probability(self):
        rho = QuantumState.from_label("0").density()
        effect = QuantumState.from_label("+").projector()
        self.assertAlmostEqual(born_probability(rho, effect), 0.5, places=12)

    def test_haar_state_is_seeded(self):
        a = haar_random_state(np.random.default_rng(7))
        b = haar_random_state(np.random.default_rng(7))
        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)


class TestQubitObservables(unittest.TestCase):

    def test_observable_has_unit_eigenvalues(self):
        obs = QubitObservable(np.array([0.0, 0.6, 0.8]))
        np.testing.assert_allclose(np.linalg.eigvalsh(obs.matrix), [-1.0, 1.0], atol=1e-12)

    def test_non_unit_bloch_rejected(self):
        with self.assertRaises(NormalizationError):
            QubitObservable(np.array([0.0, 0.0, 2.0]))

    def test_trine_eigenstates(self):
        observables = trine_observables()
        self.assertEqual([o.label for o in observables], ["A1", "A2", "A3"])
        plus = [o.eigenstate(+1) for o in observables]
        self.assertEqual(plus[0].label, "A1+")
        self.assertTrue(same_state(plus[0], QuantumState.from_label("0")))
        for i in range(3):
            for j in range(i + 1, 3):
                self.assertAlmostEqual(overlap_sq(plus[i], plus[j]), 0.25, places=12)
        self.assertLess(overlap_sq(observables[1].eigenstate(+1), observables[1].eigenstate(-1)), 1e-15)

    def test_trine_bloch_vectors_sum_to_zero(self):
        total = sum(o.bloch for o in trine_observables())
        np.testing.assert_allclose(total, np.zeros(3), atol=1e-12)

    def test_projectors_reconstruct_trine_observables(self):
        for obs in trine_observables():
            plus, minus = projectors_of(obs)
            np.testing.assert_allclose(plus.matrix - minus.matrix, obs.matrix, atol=1e-12)
            np.testing.assert_allclose(plus.matrix + minus.matrix, np.eye(2), atol=1e-12)
            np.testing.assert_allclose(plus.matrix, obs.eigenstate(+1).projector().matrix, atol=1e-12)


class TestQuantumInvariants(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(2024)

    def test_overlap_ignores_global_phase_and_order(self):
        for _ in range(20):
            a = haar_random_state(self.rng)
            b = haar_random_state(self.rng)
            rotated = QuantumState(a.amplitudes * np.exp(1j * self.rng.uniform(0, 2 * np.pi)))
            self.assertAlmostEqual(overlap_sq(a, b), overlap_sq(b, a), places=12)
            self.assertAlmostEqual(overlap_sq(rotated, b), overlap_sq(a, b), places=12)

    def test_outcome_probabilities_are_complementary(self):
        for _ in range(20):
            rho = haar_random_state(self.rng).density()
            projector = haar_random_state(self.rng).projector().matrix
            effect = Effect(0.3 * np.eye(2) + 0.5 * projector)
            total = born_probability(rho, effect) + born_probability(rho, effect.complement())
            self.assertAlmostEqual(total, 1.0, places=12)

    def test_trine_observables_on_maximally_mixed_state(self):
        rho = DensityOperator.maximally_mixed(2)
        for obs in trine_observables():
            np.testing.assert_allclose(obs.matrix @ obs.matrix, np.eye(2), atol=1e-12)
            plus, minus = projectors_of(obs)
            self.assertAlmostEqual(born_probability(rho, plus), 0.5, places=12)
            self.assertAlmostEqual(born_probability(rho, minus), 0.5, places=12)


if __name__ == '__main__':
    unittest.main()
