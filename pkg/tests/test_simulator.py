"""
Unit Tests for Dense Simulation

Tests exact evolution, circuit unitaries, norms and state helpers.
"""

import json
import math
import unittest

import numpy as np
from scipy.linalg import expm

from src.circuit import Gate, GateCircuit
from src.errors import NumericalGuardError, ResourceLimitError
from src.graph import LabeledGraph
from src.simulator import (
    circuit_unitary, commutator_norm, evolve_state, exact_dynamic_evolution, exact_evolution,
    operator_to_json, operators_equal, spectral_norm_diff, vertex_probabilities,
)

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])


class TestExactEvolution(unittest.TestCase):
    """Test cases for exact_evolution."""

    def setUp(self):
        """Build a small random graph adjacency."""
        rng = np.random.default_rng(7)
        upper = np.triu(rng.integers(0, 2, size=(8, 8)), 1)
        self.adjacency = (upper + upper.T).astype(float)

    def test_zero_matrix(self):
        """Test e^0 is the identity."""
        np.testing.assert_allclose(exact_evolution(np.zeros((4, 4)), 1.3), np.eye(4), atol=1e-12)

    def test_pauli_x_quarter_turn(self):
        """Test e^{-i X pi/2} = -iX."""
        np.testing.assert_allclose(exact_evolution(PAULI_X, math.pi / 2), -1j * PAULI_X, atol=1e-12)

    def test_matches_expm(self):
        """Test agreement with scipy's matrix exponential."""
        for t in (0.1, 0.5, 1.0):
            expected = expm(-1j * t * self.adjacency)
            self.assertLess(np.linalg.norm(exact_evolution(self.adjacency, t) - expected), 1e-12)

    def test_inverse_and_semigroup(self):
        """Test U(t) U(-t) = I and U(t1 + t2) = U(t1) U(t2)."""
        forward = exact_evolution(self.adjacency, 0.7)
        backward = exact_evolution(self.adjacency, -0.7)
        np.testing.assert_allclose(forward @ backward, np.eye(8), atol=1e-12)
        combined = exact_evolution(self.adjacency, 0.3) @ exact_evolution(self.adjacency, 0.4)
        np.testing.assert_allclose(combined, forward, atol=1e-12)

    def test_non_symmetric_rejected(self):
        """Test non-symmetric Hamiltonians are refused."""
        with self.assertRaises(ValueError):
            exact_evolution(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)

    def test_dimension_limit(self):
        """Test the dense dimension guard."""
        with self.assertRaises(ResourceLimitError):
            exact_evolution(np.broadcast_to(0.0, (1 << 13, 1 << 13)), 1.0)

    def test_dynamic_evolution_order(self):
        """Test segments apply first-to-last."""
        first = LabeledGraph.from_edges(2, [(0, 1)]).adjacency_matrix()
        second = LabeledGraph.from_edges(2, [(1, 3)]).adjacency_matrix()
        expected = expm(-1j * 0.4 * second) @ expm(-1j * 0.2 * first)
        result = exact_dynamic_evolution([(first, 0.2), (second, 0.4)])
        self.assertLess(np.linalg.norm(result - expected), 1e-12)


class TestCircuitUnitary(unittest.TestCase):
    """Test cases for circuit_unitary."""

    def test_cx_convention(self):
        """Test CX q1 -> q0 flips bit 0 of labels with bit 1 set."""
        unitary = circuit_unitary(GateCircuit(2, [Gate.cx(1, 0)]))
        expected = np.zeros((4, 4))
        for x in range(4):
            y = x ^ 1 if x & 2 else x
            expected[y, x] = 1.0
        np.testing.assert_array_equal(unitary, expected)

    def test_gate_order(self):
        """Test the first gate is applied first."""
        circuit = GateCircuit(1, [Gate.h(0), Gate.s(0)])
        h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        s = np.diag([1, 1j])
        np.testing.assert_allclose(circuit_unitary(circuit), s @ h, atol=1e-12)

    def test_mcrx_acts_on_matching_controls(self):
        """Test an MCRX rotates only the controlled subspace."""
        gate = Gate.mcrx(2, [(1, 1), (0, 0)], 0.8)
        unitary = circuit_unitary(GateCircuit(3, [gate]))
        adjacency = LabeledGraph.from_edges(3, [(2, 6)]).adjacency_matrix()
        self.assertLess(np.linalg.norm(unitary - expm(-1j * 0.4 * adjacency)), 1e-12)

    def test_qubit_limit(self):
        """Test the unitary size guard."""
        with self.assertRaises(ResourceLimitError):
            circuit_unitary(GateCircuit(5), max_qubits=4)


class TestNorms(unittest.TestCase):
    """Test cases for norms and comparisons."""

    def test_spectral_norm_identity(self):
        """Test ||I - (-I)|| = 2 and ||U - U|| = 0."""
        eye = np.eye(4)
        self.assertAlmostEqual(spectral_norm_diff(eye, -eye), 2.0, places=12)
        self.assertEqual(spectral_norm_diff(eye, eye), 0.0)

    def test_spectral_norm_shape_mismatch(self):
        """Test operands must have equal shapes."""
        with self.assertRaises(ValueError):
            spectral_norm_diff(np.eye(2), np.eye(4))

    def test_metric_properties(self):
        """Test symmetry and the triangle inequality on random unitaries."""
        rng = np.random.default_rng(11)
        adjacencies = []
        for _ in range(3):
            upper = np.triu(rng.normal(size=(4, 4)), 1)
            adjacencies.append(upper + upper.T)
        a, b, c = (exact_evolution(m, 1.0) for m in adjacencies)
        self.assertAlmostEqual(spectral_norm_diff(a, b), spectral_norm_diff(b, a), places=12)
        self.assertLessEqual(spectral_norm_diff(a, c),
                             spectral_norm_diff(a, b) + spectral_norm_diff(b, c) + 1e-12)

    def test_commutator_of_matchings(self):
        """Test the 4-cycle matchings commute and a split 2-path does not."""
        m0 = LabeledGraph.from_edges(2, [(0, 1), (2, 3)]).adjacency_matrix()
        m1 = LabeledGraph.from_edges(2, [(0, 3), (1, 2)]).adjacency_matrix()
        self.assertLess(commutator_norm(m0, m1), 1e-12)
        e0 = LabeledGraph.from_edges(2, [(0, 1)]).adjacency_matrix()
        e1 = LabeledGraph.from_edges(2, [(1, 3)]).adjacency_matrix()
        self.assertGreater(commutator_norm(e0, e1), 0.5)

    def test_operators_equal_up_to_phase(self):
        """Test global phases are quotiented out on request."""
        u = exact_evolution(PAULI_X, 0.3)
        self.assertFalse(operators_equal(u, -u))
        self.assertTrue(operators_equal(u, np.exp(0.7j) * u, up_to_phase=True))


class TestStates(unittest.TestCase):
    """Test cases for walker states."""

    def test_single_edge_walk(self):
        """Test a walker on one edge oscillates as cos^2 / sin^2."""
        unitary = exact_evolution(PAULI_X, 0.4)
        probabilities = vertex_probabilities(evolve_state(unitary, 0))
        np.testing.assert_allclose(probabilities, [math.cos(0.4) ** 2, math.sin(0.4) ** 2], atol=1e-12)

    def test_unnormalized_state(self):
        """Test unnormalized states trip the numerical guard."""
        with self.assertRaises(NumericalGuardError):
            vertex_probabilities(np.array([1.0, 1.0]))

    def test_bad_initial_vertex(self):
        """Test the initial vertex must exist."""
        with self.assertRaises(ValueError):
            evolve_state(np.eye(2), 2)

    def test_operator_json(self):
        """Test the [re, im] JSON dump."""
        data = json.loads(operator_to_json(np.array([[1j, 0], [0, 1]])))
        self.assertEqual(data[0][0], [0.0, 1.0])
        self.assertEqual(data[1][1], [1.0, 0.0])


if __name__ == '__main__':
    unittest.main()
