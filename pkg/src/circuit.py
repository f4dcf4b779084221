"""
Gate-Level Circuit IR

Gates, circuits, their JSON / text forms, and the CX-count and depth metrics.

Gate kinds:
- X, H, S, SDG          single-qubit Cliffords
- Rx, Rz                single-qubit rotations (angle in radians)
- CX                    one control with value 1
- MCRX                  Rx on the target conditioned on (qubit, value) controls
"""

import json
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import GraphFormatError

GATE_KINDS = ("X", "CX", "Rx", "Rz", "H", "SDG", "S", "MCRX")
ROTATION_KINDS = ("Rx", "Rz", "MCRX")
LOWERED_KINDS = frozenset(GATE_KINDS) - {"MCRX"}

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """
    One gate of the IR.

    `controls` is a tuple of (qubit, value) pairs; only CX and MCRX carry
    controls. `angle` is only meaningful for rotations.
    """

    kind: str
    target: int
    controls: tuple = ()
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        controls = tuple((int(q), int(val)) for q, val in self.controls)
        object.__setattr__(self, "controls", controls)
        qubits = [q for q, _ in controls]
        if self.target < 0 or any(q < 0 for q in qubits):
            raise ValueError(f"negative qubit index in {self}")
        if self.target in qubits:
            raise ValueError(f"target q{self.target} is also a control")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"duplicate control qubits {qubits}")
        if any(val not in (0, 1) for _, val in controls):
            raise ValueError(f"control values must be 0 or 1, got {controls}")
        if self.kind == "CX" and (len(controls) != 1 or controls[0][1] != 1):
            raise ValueError("CX takes exactly one control with value 1")
        if self.kind not in ("CX", "MCRX") and controls:
            raise ValueError(f"{self.kind} gates take no controls")
        if self.kind not in ROTATION_KINDS and self.angle != 0.0:
            raise ValueError(f"{self.kind} gates take no angle")

    # -- constructors --------------------------------------------------------

    @classmethod
    def x(cls, qubit):
        return cls("X", qubit)

    @classmethod
    def h(cls, qubit):
        return cls("H", qubit)

    @classmethod
    def s(cls, qubit):
        return cls("S", qubit)

    @classmethod
    def sdg(cls, qubit):
        return cls("SDG", qubit)

    @classmethod
    def cx(cls, control, target):
        return cls("CX", target, ((control, 1),))

    @classmethod
    def rx(cls, qubit, angle):
        return cls("Rx", qubit, (), float(angle))

    @classmethod
    def rz(cls, qubit, angle):
        return cls("Rz", qubit, (), float(angle))

    @classmethod
    def mcrx(cls, target, controls, angle):
        return cls("MCRX", target, tuple(controls), float(angle))

    # -- properties ----------------------------------------------------------

    @property
    def qubits(self):
        return (self.target,) + tuple(q for q, _ in self.controls)

    @property
    def is_rotation(self):
        return self.kind in ROTATION_KINDS

    def matrix(self):
        """2x2 matrix applied to the target when all controls match."""
        kind = self.kind
        if kind in ("X", "CX"):
            return np.array([[0, 1], [1, 0]], dtype=complex)
        if kind == "H":
            return _SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=complex)
        if kind == "S":
            return np.array([[1, 0], [0, 1j]], dtype=complex)
        if kind == "SDG":
            return np.array([[1, 0], [0, -1j]], dtype=complex)
        half = self.angle / 2.0
        if kind == "Rz":
            return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)
        # Rx(theta) = [[cos(theta/2), -i sin(theta/2)], [-i sin(theta/2), cos(theta/2)]]
        c, s = math.cos(half), math.sin(half)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)

    # -- serialization -------------------------------------------------------

    def to_dict(self):
        return {
            "kind": self.kind,
            "target": self.target,
            "controls": [list(c) for c in self.controls],
            "angle": self.angle,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data["kind"], int(data["target"]),
                       tuple(tuple(c) for c in data.get("controls", [])),
                       float(data.get("angle", 0.0)))
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed gate record {data!r}: {exc}") from exc

    def __str__(self):
        if self.kind == "CX":
            return f"CX q{self.controls[0][0]} -> q{self.target}"
        head = f"{self.kind}({self.angle!r})" if self.is_rotation else self.kind
        text = f"{head} q{self.target}"
        if self.controls:
            text += " | " + " ".join(f"q{q}={val}" for q, val in self.controls)
        return text


@dataclass(frozen=True)
class GateCircuit:
    """Ordered, immutable gate list over `num_qubits` qubits."""

    num_qubits: int
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        for gate in self.gates:
            if max(gate.qubits) >= self.num_qubits:
                raise ValueError(f"gate '{gate}' acts outside {self.num_qubits} qubits")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other):
        return GateCircuit(max(self.num_qubits, other.num_qubits), self.gates + other.gates)

    def repeat(self, times):
        return GateCircuit(self.num_qubits, self.gates * times)

    def count_ops(self):
        return dict(Counter(g.kind for g in self.gates))

    @property
    def is_lowered(self):
        return all(g.kind in LOWERED_KINDS for g in self.gates)

    def to_json(self):
        return json.dumps([g.to_dict() for g in self.gates])

    @classmethod
    def from_json(cls, text, num_qubits=None):
        try:
            records = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid circuit JSON: {exc}") from exc
        gates = tuple(Gate.from_dict(r) for r in records)
        if num_qubits is None:
            num_qubits = max((max(g.qubits) for g in gates), default=-1) + 1
        return cls(num_qubits, gates)

    def to_text(self):
        """One gate per line, for diffing."""
        return "\n".join(str(g) for g in self.gates) + ("\n" if self.gates else "")


def cx_count(circuit):
    """
    Number of CX gates in a lowered circuit.

    Raises:
        ValueError: If an MCRX gate has not been lowered yet
    """
    if not circuit.is_lowered:
        raise ValueError("cx_count needs a lowered circuit; run lower_circuit first")
    return sum(1 for g in circuit.gates if g.kind == "CX")


def depth(circuit):
    """
    Number of parallel layers under greedy (as-soon-as-possible) layering.

    A gate lands one layer after the latest gate sharing any of its qubits.
    """
    levels = [0] * circuit.num_qubits
    for gate in circuit.gates:
        layer = max(levels[q] for q in gate.qubits) + 1
        for q in gate.qubits:
            levels[q] = layer
    return max(levels, default=0)
