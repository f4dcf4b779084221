"""
Dense Simulation Module

Exact continuous-time walk evolution, circuit unitaries and operator norms
on dense 2^n x 2^n complex matrices.

Basis index x is the vertex label x; qubit q is bit q of the index, which
matches the kron order P_{n-1} (x) ... (x) P_0 used for Pauli strings.
"""

import json
import logging

import numpy as np
from scipy import linalg

from config.settings import DEFAULT_CONFIG
from .errors import NumericalGuardError, ResourceLimitError

logger = logging.getLogger(__name__)


def _check_dimension(dim, max_qubits=None):
    """Number of qubits of a power-of-two dimension within the dense budget."""
    max_qubits = DEFAULT_CONFIG['max_unitary_qubits'] if max_qubits is None else max_qubits
    if dim < 1 or dim & (dim - 1):
        raise ValueError(f"operator dimension must be a power of two, got {dim}")
    num_qubits = dim.bit_length() - 1
    if num_qubits > max_qubits:
        raise ResourceLimitError(
            f"{num_qubits}-qubit dense operator exceeds the {max_qubits}-qubit limit"
        )
    return num_qubits


def _check_square_pair(first, second):
    if first.shape != second.shape or first.ndim != 2 or first.shape[0] != first.shape[1]:
        raise ValueError(f"operator shapes differ or are not square: {first.shape} vs {second.shape}")


def circuit_unitary(circuit, max_qubits=None):
    """
    Dense unitary of a circuit (MCRX gates are applied ideally, not synthesized).

    Args:
        circuit (GateCircuit): Circuit over n qubits
        max_qubits (int): Dense budget, defaults to the configured limit

    Returns:
        np.ndarray: 2^n x 2^n complex matrix, first gate applied first
    """
    max_qubits = DEFAULT_CONFIG['max_unitary_qubits'] if max_qubits is None else max_qubits
    n = circuit.num_qubits
    if n > max_qubits:
        raise ResourceLimitError(f"{n}-qubit circuit exceeds the {max_qubits}-qubit unitary limit")

    dim = 1 << n
    unitary = np.eye(dim, dtype=complex)
    indices = np.arange(dim)

    for gate in circuit.gates:
        selected = (indices >> gate.target) & 1 == 0
        for q, val in gate.controls:
            selected &= (indices >> q) & 1 == val
        rows0 = indices[selected]
        rows1 = rows0 | (1 << gate.target)
        (m00, m01), (m10, m11) = gate.matrix()
        top, bottom = unitary[rows0], unitary[rows1]
        unitary[rows0] = m00 * top + m01 * bottom
        unitary[rows1] = m10 * top + m11 * bottom
    return unitary


def exact_evolution(adjacency, t):
    """
    Continuous-time walk operator e^{-iAt} of a real symmetric matrix.

    Args:
        adjacency (np.ndarray): Real symmetric 2^n x 2^n matrix
        t (float): Evolution time

    Returns:
        np.ndarray: Unitary evolution operator
    """
    adjacency = np.asarray(adjacency)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {adjacency.shape}")
    _check_dimension(adjacency.shape[0])
    if np.iscomplexobj(adjacency):
        if np.max(np.abs(adjacency.imag), initial=0.0) > DEFAULT_CONFIG['tolerance']:
            raise ValueError("walk Hamiltonian must be real")
        adjacency = adjacency.real
    if not np.allclose(adjacency, adjacency.T, rtol=0.0, atol=DEFAULT_CONFIG['tolerance']):
        raise ValueError("walk Hamiltonian must be symmetric")

    eigenvalues, eigenvectors = linalg.eigh(adjacency)
    phases = np.exp(-1j * t * eigenvalues)
    return (eigenvectors * phases) @ eigenvectors.T


def exact_dynamic_evolution(segments):
    """
    Evolution under a piecewise-constant graph: e^{-iA_m t_m} ... e^{-iA_1 t_1}.

    Args:
        segments (list): (adjacency matrix, duration) pairs, first applied first
    """
    if not segments:
        raise ValueError("dynamic evolution needs at least one segment")
    result = None
    for adjacency, t in segments:
        step = exact_evolution(adjacency, t)
        result = step if result is None else step @ result
    return result


def spectral_norm_diff(first, second):
    """Largest singular value of first - second."""
    first, second = np.asarray(first), np.asarray(second)
    _check_square_pair(first, second)
    _check_dimension(first.shape[0])
    return float(linalg.svdvals(first - second)[0])


def commutator_norm(first, second):
    """Spectral norm of AB - BA."""
    first, second = np.asarray(first), np.asarray(second)
    _check_square_pair(first, second)
    return spectral_norm_diff(first @ second, second @ first)


def operators_equal(first, second, tolerance=None, up_to_phase=False):
    """
    Frobenius-norm equality of two operators.

    With `up_to_phase`, the second operator is first rotated so that its
    largest-magnitude entry has the same phase as the first operator's entry
    at that position.
    """
    tolerance = DEFAULT_CONFIG['tolerance'] if tolerance is None else tolerance
    first, second = np.asarray(first), np.asarray(second)
    _check_square_pair(first, second)
    if up_to_phase:
        index = np.unravel_index(np.argmax(np.abs(second)), second.shape)
        if abs(first[index]) < tolerance:
            return False
        phase = first[index] / second[index]
        second = second * (phase / abs(phase))
    return float(np.linalg.norm(first - second)) < tolerance


def evolve_state(unitary, initial_vertex):
    """Walker amplitudes after `unitary`, starting on a single vertex."""
    unitary = np.asarray(unitary)
    if not 0 <= initial_vertex < unitary.shape[0]:
        raise ValueError(f"initial vertex {initial_vertex} outside 0..{unitary.shape[0] - 1}")
    return unitary[:, initial_vertex].copy()


def vertex_probabilities(state):
    """Measurement probabilities per vertex of a normalized state."""
    probabilities = np.abs(np.asarray(state)) ** 2
    total = probabilities.sum()
    if abs(total - 1.0) > 1e-9:
        raise NumericalGuardError(f"state is not normalized (total probability {total})")
    return probabilities


def operator_to_json(operator):
    """JSON dump of an operator as nested [re, im] pairs."""
    operator = np.asarray(operator, dtype=complex)
    return json.dumps([[[float(z.real), float(z.imag)] for z in row] for row in operator])


__all__ = [
    'circuit_unitary', 'exact_evolution', 'exact_dynamic_evolution', 'spectral_norm_diff',
    'commutator_norm', 'operators_equal', 'evolve_state', 'vertex_probabilities',
    'operator_to_json',
]
