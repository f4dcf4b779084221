"""
Walk Compilers Module

Two ways of turning a graph and an evolution time into a gate circuit:
- MatchingCompiler: greedy matchings -> compressed edges -> three-stage
  edge circuits, repeated N times (first-order Trotter)
- PauliCompiler: Pauli coefficients c_P = Tr(P A) / 2^n -> one basis change,
  CX ladder and Rz per term, repeated N times

Pauli strings are written most significant qubit first: in 'IXZ', Z acts on
qubit 0 and I on qubit 2.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from config.settings import DEFAULT_CONFIG
from .circuit import Gate, GateCircuit
from .errors import NumericalGuardError, ResourceLimitError
from .matching import CompressedEdge, MatchingDecomposer

logger = logging.getLogger(__name__)

PAULI_CHARS = "IXYZ"

_PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# (x bit, z bit) of a qubit -> Pauli letter
_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


@dataclass(frozen=True)
class PauliTerm:
    """Real coefficient times a Pauli string."""

    string: str
    coefficient: float

    def __post_init__(self):
        if not self.string or set(self.string) - set(PAULI_CHARS):
            raise ValueError(f"Pauli string must be a non-empty word over IXYZ, got {self.string!r}")
        if abs(self.coefficient) <= DEFAULT_CONFIG['tolerance']:
            raise ValueError(f"coefficient of {self.string} is zero")
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @property
    def num_qubits(self):
        return len(self.string)

    @property
    def support(self):
        """Qubit indices with a non-identity letter, ascending."""
        n = len(self.string)
        return [n - 1 - pos for pos in reversed(range(n)) if self.string[pos] != "I"]

    def letter(self, qubit):
        return self.string[len(self.string) - 1 - qubit]

    def anticommutes_with(self, other):
        """Two strings anticommute iff they clash on an odd number of positions."""
        if len(self.string) != len(other.string):
            raise ValueError("Pauli strings have different lengths")
        clashes = sum(a != "I" and b != "I" and a != b for a, b in zip(self.string, other.string))
        return clashes % 2 == 1

    def matrix(self):
        result = np.ones((1, 1), dtype=complex)
        for char in self.string:
            result = np.kron(result, _PAULI_MATRICES[char])
        return self.coefficient * result

    def __str__(self):
        return f"{self.coefficient:+g}*{self.string}"


@dataclass(frozen=True)
class TrotterPlan:
    """Evolution time, Trotter step count and an optional fixed term order."""

    time: float
    steps: int
    term_order: tuple = None

    def __post_init__(self):
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"Trotter steps must be a positive integer, got {self.steps}")
        object.__setattr__(self, "steps", int(self.steps))
        if self.term_order is not None:
            object.__setattr__(self, "term_order", tuple(int(i) for i in self.term_order))

    @property
    def step_time(self):
        return self.time / self.steps

    def ordered(self, items):
        """Items in the plan's term order (index order when none is set)."""
        if self.term_order is None:
            return list(items)
        if sorted(self.term_order) != list(range(len(items))):
            raise ValueError(f"term order {self.term_order} is not a permutation of {len(items)} terms")
        return [items[i] for i in self.term_order]


class MatchingCompiler:
    """
    Compiles graph walks from their matching decomposition.

    Each compressed edge becomes a three-stage circuit:
    1. CX from the target qubit onto every other qubit where the endpoints differ
    2. Rx(2 * angle) on the target, controlled by the remaining active qubits
    3. stage 1 reversed
    """

    def __init__(self, config=None, decomposer=None, compress=True):
        self.config = {**DEFAULT_CONFIG, **(config or {})}
        self.decomposer = decomposer or MatchingDecomposer()
        self.compress = compress

    @staticmethod
    def edge_gates(edge, angle):
        """Gate list of one compressed edge."""
        diff = edge.current_mask
        position = (diff & -diff).bit_length() - 1
        target = edge.active[position]
        low = edge.u_prime if not (edge.u_prime >> position) & 1 else edge.v_prime

        spread = list(edge.weight_reducing) + [
            edge.active[p] for p in range(edge.width) if p != position and (diff >> p) & 1
        ]
        controls = sorted(
            ((edge.active[p], (low >> p) & 1) for p in range(edge.width) if p != position),
            reverse=True,
        )

        fan_out = [Gate.cx(target, q) for q in spread]
        if controls:
            rotation = Gate.mcrx(target, controls, 2.0 * angle)
        else:
            rotation = Gate.rx(target, 2.0 * angle)
        return fan_out + [rotation] + fan_out[::-1]

    def edge_circuit(self, edge, angle, num_qubits=None):
        """
        Circuit equal to exp(-i * angle * A_e) for the expanded edge set of e.

        Args:
            edge (CompressedEdge): Compressed edge
            angle (float): Evolution angle (t / N inside a Trotter step)
            num_qubits (int): Circuit width, defaults to the smallest one
                holding every qubit the edge touches

        Returns:
            GateCircuit: CX fan-out, (multi)controlled Rx, CX fan-in
        """
        if num_qubits is None:
            num_qubits = max(max(edge.active, default=0) + 1, edge.mask.bit_length())
        return GateCircuit(num_qubits, self.edge_gates(edge, angle))

    def _edges_circuit(self, edges, angle, num_qubits):
        gates = []
        for edge in edges:
            gates.extend(self.edge_gates(edge, angle))
        return GateCircuit(num_qubits, gates)

    def matching_circuit(self, matching, angle):
        """exp(-i * angle * A_M) of one matching, built from its compressed edges."""
        if not self.compress:
            return self.raw_matching_circuit(matching, angle)
        edges = self.decomposer.compress_matching(matching)
        return self._edges_circuit(edges, angle, matching.num_qubits)

    def raw_matching_circuit(self, matching, angle):
        """Same evolution with one uncompressed circuit per original edge."""
        edges = [CompressedEdge.fresh(u, v, matching.num_qubits) for u, v in matching.edges]
        return self._edges_circuit(edges, angle, matching.num_qubits)

    def compile_step(self, matchings, angle, num_qubits, term_order=None):
        """One Trotter step: the matching circuits in plan order."""
        plan = TrotterPlan(angle, 1, term_order)
        circuit = GateCircuit(num_qubits)
        for matching in plan.ordered(matchings):
            circuit = circuit + self.matching_circuit(matching, angle)
        return circuit

    def compile_matching_trotter(self, graph, plan):
        """
        Trotterized walk circuit of a graph.

        Args:
            graph (LabeledGraph): Input graph
            plan (TrotterPlan): Time, step count and matching order

        Returns:
            GateCircuit: One step repeated plan.steps times
        """
        matchings = self.decomposer.greedy_matching_decompose(graph)
        step = self.compile_step(matchings, plan.step_time, graph.num_qubits, plan.term_order)
        logger.debug("matching step: %d matchings, %d gates", len(matchings), len(step))
        return step.repeat(plan.steps)

    def compile(self, graph, plan):
        return self.compile_matching_trotter(graph, plan)

    def compile_dynamic_walk(self, segments, steps):
        """
        Walk on a time-dependent graph given as (graph, duration) segments.

        Every segment is Trotterized with the same step count; the first segment
        is applied first.
        """
        if not segments:
            raise ValueError("dynamic walk needs at least one segment")
        widths = {graph.num_qubits for graph, _ in segments}
        if len(widths) != 1:
            raise ValueError(f"segments live on different qubit counts: {sorted(widths)}")
        circuit = GateCircuit(widths.pop())
        for graph, duration in segments:
            circuit = circuit + self.compile_matching_trotter(graph, TrotterPlan(duration, steps))
        return circuit

    def metadata(self, graph, plan):
        """Sidecar record written next to a compiled circuit."""
        return {
            'method': 'matching',
            't': plan.time,
            'N': plan.steps,
            'num_matchings': len(self.decomposer.greedy_matching_decompose(graph)),
        }


class PauliCompiler:
    """Pauli-decomposition baseline compiler."""

    def __init__(self, config=None):
        self.config = {**DEFAULT_CONFIG, **(config or {})}

    def pauli_decompose(self, adjacency, num_qubits):
        """
        Pauli coefficients of a real symmetric matrix.

        Strings sharing an X/Y pattern m are handled together: with
        b[c] = A[c ^ m, c], the coefficients for every Z/Y pattern z are a
        Walsh-Hadamard transform of b times (-i)^popcount(m & z).

        Args:
            adjacency (np.ndarray): 2^n x 2^n real symmetric matrix
            num_qubits (int): n

        Returns:
            list: PauliTerm objects with |c_P| > tolerance, lexicographic (I<X<Y<Z)
        """
        if num_qubits > self.config['max_pauli_qubits']:
            raise ResourceLimitError(
                f"Pauli decomposition of {num_qubits} qubits exceeds the "
                f"{self.config['max_pauli_qubits']}-qubit limit"
            )
        adjacency = np.asarray(adjacency)
        dim = 1 << num_qubits
        if adjacency.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix for {num_qubits} qubits, got {adjacency.shape}")

        tolerance = self.config['tolerance']
        walsh = linalg.hadamard(dim)
        columns = np.arange(dim)
        z_masks = np.arange(dim)

        terms = []
        for x_mask in range(dim):
            transformed = walsh @ adjacency[columns ^ x_mask, columns] / dim
            powers = np.array([bin(x_mask & z).count("1") for z in z_masks])
            coefficients = (-1j) ** powers * transformed
            for z_mask in np.nonzero(np.abs(coefficients) > tolerance)[0]:
                value = coefficients[z_mask]
                if abs(value.imag) > tolerance:
                    raise NumericalGuardError(
                        f"non-real Pauli coefficient {value} (input is not real symmetric)"
                    )
                string = "".join(
                    _LETTER[((x_mask >> q) & 1, (int(z_mask) >> q) & 1)]
                    for q in reversed(range(num_qubits))
                )
                terms.append(PauliTerm(string, float(value.real)))
        return sorted(terms, key=lambda term: term.string)

    @staticmethod
    def reconstruct(terms, num_qubits):
        """Sum of c_P * P."""
        dim = 1 << num_qubits
        total = np.zeros((dim, dim), dtype=complex)
        for term in terms:
            total += term.matrix()
        return total

    @staticmethod
    def term_gates(term, angle):
        """
        exp(-i * angle * c * P) as basis change, CX ladder, Rz, and their inverses.

        An all-identity string only contributes a global phase and yields no gates.
        """
        support = term.support
        if not support:
            return []

        basis_in, basis_out = [], []
        for q in support:
            letter = term.letter(q)
            if letter == "X":
                basis_in.append(Gate.h(q))
                basis_out.append(Gate.h(q))
            elif letter == "Y":
                basis_in.extend([Gate.sdg(q), Gate.h(q)])
                basis_out.extend([Gate.h(q), Gate.s(q)])

        ladder = [Gate.cx(a, b) for a, b in zip(support, support[1:])]
        rotation = Gate.rz(support[-1], 2.0 * term.coefficient * angle)
        return basis_in + ladder + [rotation] + ladder[::-1] + basis_out

    def term_circuit(self, term, angle):
        return GateCircuit(term.num_qubits, self.term_gates(term, angle))

    def compile_pauli_trotter(self, terms, plan):
        """
        Trotterized circuit of a Pauli sum.

        Args:
            terms (list): Non-empty list of PauliTerm on the same qubit count
            plan (TrotterPlan): Time, step count and term order

        Returns:
            GateCircuit: One step repeated plan.steps times
        """
        if not terms:
            raise ValueError("cannot compile an empty Pauli sum")
        widths = {term.num_qubits for term in terms}
        if len(widths) != 1:
            raise ValueError(f"Pauli terms have different lengths: {sorted(widths)}")

        gates = []
        for term in plan.ordered(terms):
            gates.extend(self.term_gates(term, plan.step_time))
        step = GateCircuit(widths.pop(), gates)
        logger.debug("pauli step: %d terms, %d gates", len(terms), len(step))
        return step.repeat(plan.steps)

    def compile(self, graph, plan):
        """Decompose a graph's adjacency matrix and Trotterize it (empty graph -> empty circuit)."""
        terms = self.pauli_decompose(graph.adjacency_matrix(), graph.num_qubits)
        if not terms:
            return GateCircuit(graph.num_qubits)
        return self.compile_pauli_trotter(terms, plan)

    def metadata(self, graph, plan):
        terms = self.pauli_decompose(graph.adjacency_matrix(), graph.num_qubits)
        return {'method': 'pauli', 't': plan.time, 'N': plan.steps, 'num_terms': len(terms)}


def pauli_decompose(adjacency, num_qubits):
    return PauliCompiler().pauli_decompose(adjacency, num_qubits)


def compile_matching_trotter(graph, plan):
    return MatchingCompiler().compile_matching_trotter(graph, plan)


def compile_pauli_trotter(terms, plan):
    return PauliCompiler().compile_pauli_trotter(terms, plan)


def edge_circuit(edge, angle, num_qubits=None):
    return MatchingCompiler().edge_circuit(edge, angle, num_qubits)


def matching_circuit(matching, angle):
    return MatchingCompiler().matching_circuit(matching, angle)
