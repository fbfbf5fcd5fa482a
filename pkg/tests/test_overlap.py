"""Tests for classical fidelity, total variation and the degree of epistemicity."""
import unittest
import sys
import os
from functools import lru_cache

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ontoscope.errors import SpaceMismatchError, UndefinedEpistemicityError
from ontoscope.models.ontic import EpistemicState, OnticSpace, support, support_integral
from ontoscope.models.overlap import (
    classical_fidelity, degree_of_epistemicity, overlap_record, total_variation,
)
from ontoscope.models.quantum import QuantumState, haar_random_state, overlap_sq, quantum_overlap
from ontoscope.zoo.kochen_specker import KochenSpeckerBuilder, build_ks

ORACLE_GRID = 160000


@lru_cache(maxsize=None)
def _ks_model(n=20000):
    return build_ks(n, seed=42, random_state_count=12)


@lru_cache(maxsize=None)
def _oracle_builder():
    return KochenSpeckerBuilder(ORACLE_GRID, random_state_count=0)


def _random_densities(rng, space):
    raw = rng.random(space.size) * (rng.random(space.size) > 0.3)
    return EpistemicState.from_values(space, raw)


def _spot_pairs(count=10, seed=2024):
    """Non-orthogonal Haar pairs with overlap well above the f floor."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        a = haar_random_state(rng, label=f"a{len(pairs)}")
        b = haar_random_state(rng, label=f"b{len(pairs)}")
        if overlap_sq(a, b) >= 0.2:
            pairs.append((a, b))
    return pairs


class TestDistances(unittest.TestCase):

    def setUp(self):
        self.space = OnticSpace.abstract(4)

    def test_identical_densities(self):
        mu = EpistemicState(self.space, np.array([0.1, 0.2, 0.3, 0.4]))
        self.assertAlmostEqual(classical_fidelity(mu, mu), 1.0)
        self.assertAlmostEqual(total_variation(mu, mu), 0.0)

    def test_disjoint_densities(self):
        a = EpistemicState(self.space, np.array([0.5, 0.5, 0.0, 0.0]))
        b = EpistemicState(self.space, np.array([0.0, 0.0, 0.5, 0.5]))
        self.assertAlmostEqual(classical_fidelity(a, b), 0.0)
        self.assertAlmostEqual(total_variation(a, b), 1.0)

    def test_space_mismatch(self):
        a = EpistemicState.uniform(self.space)
        b = EpistemicState.uniform(OnticSpace.abstract(5))
        with self.assertRaises(SpaceMismatchError):
            classical_fidelity(a, b)

    def test_total_variation_identity_on_random_pairs(self):
        rng = np.random.default_rng(11)
        space = OnticSpace.abstract(50)
        for _ in range(100):
            a = _random_densities(rng, space)
            b = _random_densities(rng, space)
            self.assertAlmostEqual(total_variation(a, b), 1.0 - classical_fidelity(a, b), delta=1e-12)

    def test_near_identical_densities_have_small_distance(self):
        space = OnticSpace.abstract(20)
        base = np.linspace(1.0, 2.0, 20)
        a = EpistemicState.from_values(space, base)
        b = EpistemicState.from_values(space, base * (1.0 + 1e-7 * np.sin(np.arange(20))))
        l_c = classical_fidelity(a, b)
        self.assertGreaterEqual(l_c, 1.0 - 1e-6)
        self.assertLessEqual(total_variation(a, b), 2e-6)


class TestKochenSpeckerOverlaps(unittest.TestCase):

    def setUp(self):
        self.model = _ks_model()

    def test_classical_fidelity_matches_quantum_overlap(self):
        zero, plus = QuantumState.from_label("0"), QuantumState.from_label("+")
        record = overlap_record(self.model, zero, plus)
        self.assertAlmostEqual(record.l_q, 1.0 - np.sin(np.pi / 4), places=12)
        self.assertAlmostEqual(record.l_c, record.l_q, delta=2e-2)
        self.assertLessEqual(abs(record.deficit), 2e-2)

    def test_degree_of_epistemicity_is_one(self):
        zero, plus = QuantumState.from_label("0"), QuantumState.from_label("+")
        degree = degree_of_epistemicity(self.model, plus, zero)
        self.assertAlmostEqual(degree.value, 1.0, delta=3e-2)
        self.assertAlmostEqual(degree.overlap_sq, 0.5, places=12)

    def test_support_integral_tracks_born_overlap(self):
        prep_psi = self.model.preparation("+i")
        prep_phi = self.model.preparation("A2+@P2")
        value = support_integral(prep_psi.epistemic, support(prep_phi.epistemic))
        self.assertAlmostEqual(value, overlap_sq(prep_psi.state, prep_phi.state), delta=2e-2)

    def test_orthogonal_pair_has_no_degree(self):
        with self.assertRaises(UndefinedEpistemicityError):
            degree_of_epistemicity(self.model, QuantumState.from_label("0"), QuantumState.from_label("1"))
        with self.assertRaises(UndefinedEpistemicityError):
            degree_of_epistemicity(self.model, self.model.preparation("A1+@P1"), self.model.preparation("A1-@P1"))

    def test_record_for_same_state_procedures(self):
        record = overlap_record(self.model, self.model.preparation("A2+@P2"), self.model.preparation("A2+@P4"))
        self.assertAlmostEqual(record.l_q, 1.0)
        self.assertAlmostEqual(record.l_c, 1.0)
        self.assertEqual(record.to_dict()["pair"], ["A2+@P2", "A2+@P4"])


class TestHighResolutionOracle(unittest.TestCase):
    """Cosine caps on a 160000-point grid against the closed-form overlaps."""

    def test_spot_pairs(self):
        builder = _oracle_builder()
        space = builder.space
        for a, b in _spot_pairs():
            mu_a, mu_b = builder.density(a), builder.density(b)
            l_c = classical_fidelity(mu_a, mu_b)
            self.assertAlmostEqual(l_c, quantum_overlap(a, b), delta=5e-3)
            ov = overlap_sq(a, b)
            f_ab = support_integral(mu_a, support(mu_b)) / ov
            f_ba = support_integral(mu_b, support(mu_a)) / ov
            self.assertAlmostEqual(f_ab, 1.0, delta=5e-3)
            self.assertAlmostEqual(f_ba, 1.0, delta=5e-3)
            self.assertEqual(mu_a.space.size, space.size)


if __name__ == '__main__':
    unittest.main()
