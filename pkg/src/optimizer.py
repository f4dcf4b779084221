"""
Peephole Circuit Optimizer

Wire-local rewrites repeated until nothing changes:
- CX.CX with identical (control, target) -> nothing
- X.X, H.H, S.SDG, SDG.S on one qubit -> nothing
- Rx(a).Rx(b) -> Rx(a + b), same for Rz
- rotations with angle = 0 (mod 2 pi) are dropped

A gate looks back along its wires for a partner, stepping over gates it
commutes with. Commutation is decided per shared qubit: Z-type actions
(CX / MCRX controls, Rz, S, SDG) commute with each other, X-type actions
(CX / MCRX targets, X, Rx) commute with each other, H commutes with nothing.

Dropping a 2 pi rotation changes the unitary by a global phase of -1, which
the unitary comparisons quotient out.
"""

import logging
import math

from config.settings import DEFAULT_CONFIG
from .circuit import Gate, GateCircuit

logger = logging.getLogger(__name__)

SELF_INVERSE = frozenset({"X", "H", "CX"})
INVERSE_PAIRS = frozenset({("S", "SDG"), ("SDG", "S")})
MERGEABLE = frozenset({"Rx", "Rz"})

_Z_TYPE = frozenset({"Rz", "S", "SDG"})
_X_TYPE = frozenset({"Rx", "X"})


def wire_action(gate, qubit):
    """'Z', 'X' or None (no simple commutation class) for a gate on one qubit."""
    if gate.controls and qubit != gate.target:
        return "Z"
    if gate.kind in ("CX", "MCRX") or gate.kind in _X_TYPE:
        return "X"
    if gate.kind in _Z_TYPE:
        return "Z"
    return None


def commutes(first, second):
    """Sufficient commutation test based on per-qubit action classes."""
    for q in set(first.qubits) & set(second.qubits):
        action = wire_action(first, q)
        if action is None or action != wire_action(second, q):
            return False
    return True


class PeepholeOptimizer:
    """
    Cancels and merges gates that meet on their wires.

    Never increases the CX count: CX gates are only ever removed.
    """

    def __init__(self, tolerance=None, max_lookback=50):
        self.tolerance = DEFAULT_CONFIG['tolerance'] if tolerance is None else tolerance
        self.max_lookback = max_lookback

    def _negligible(self, angle):
        return abs(math.remainder(angle, 2.0 * math.pi)) < self.tolerance

    def _combine(self, first, second):
        """
        Result of two gates on identical wires.

        Returns:
            tuple: (matched, replacement) where replacement is None when the
                pair cancels
        """
        if first.kind in SELF_INVERSE and first == second:
            return True, None
        if (first.kind, second.kind) in INVERSE_PAIRS and first.target == second.target:
            return True, None
        if first.kind in MERGEABLE and first.kind == second.kind and first.target == second.target:
            angle = first.angle + second.angle
            if self._negligible(angle):
                return True, None
            return True, Gate(first.kind, first.target, (), angle)
        return False, None

    def _partner_on_wire(self, out, wire, gate):
        """Index of the combinable gate reachable on one wire, or None."""
        for steps, index in enumerate(reversed(wire)):
            if steps >= self.max_lookback:
                return None
            candidate = out[index]
            if set(candidate.qubits) == set(gate.qubits) and self._combine(candidate, gate)[0]:
                return index
            if not commutes(candidate, gate):
                return None
        return None

    @staticmethod
    def _discard(wire, index):
        for k in range(len(wire) - 1, -1, -1):
            if wire[k] == index:
                del wire[k]
                return

    def _single_pass(self, gates, num_qubits):
        out = []
        wires = [[] for _ in range(num_qubits)]
        changed = False

        for gate in gates:
            if gate.kind in MERGEABLE and self._negligible(gate.angle):
                changed = True
                continue

            found = {self._partner_on_wire(out, wires[q], gate) for q in gate.qubits}
            if len(found) == 1 and None not in found:
                index = found.pop()
                previous = out[index]
                _, replacement = self._combine(previous, gate)
                changed = True
                if replacement is None:
                    out[index] = None
                    for q in previous.qubits:
                        self._discard(wires[q], index)
                else:
                    out[index] = replacement
                continue

            out.append(gate)
            for q in gate.qubits:
                wires[q].append(len(out) - 1)

        return [g for g in out if g is not None], changed

    def optimize(self, circuit):
        """
        Apply the rewrite rules until a fixed point is reached.

        Args:
            circuit (GateCircuit): Input circuit (lowered or not)

        Returns:
            GateCircuit: Optimized circuit with the same unitary up to global phase
        """
        gates = list(circuit.gates)
        passes = 0
        changed = True
        while changed:
            gates, changed = self._single_pass(gates, circuit.num_qubits)
            passes += 1
        logger.debug("peephole: %d -> %d gates in %d passes", len(circuit), len(gates), passes)
        return GateCircuit(circuit.num_qubits, gates)


def peephole_optimize(circuit):
    return PeepholeOptimizer().optimize(circuit)
