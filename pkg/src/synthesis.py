"""
Multicontrolled-Rx Synthesis

Lowers MCRX gates to {X, CX, Rx, Rz, H} without ancillas:
- zero-valued controls are conjugated with X
- Rx = H Rz H on the target
- the all-ones-controlled Rz is a multiplexed rotation over 2^k control
  states, realized by a gray-code walk of 2^k (Rz, CX) pairs
"""

from .circuit import Gate, GateCircuit
from .graph import popcount


def gray_code(i):
    return i ^ (i >> 1)


def gray_flip_bit(i, k):
    """Bit that changes between gray(i) and gray(i + 1 mod 2^k)."""
    diff = gray_code(i) ^ gray_code((i + 1) % (1 << k))
    return diff.bit_length() - 1


def multiplexed_rz_angles(angles):
    """
    Rz angles of the gray-code walk realizing a multiplexed Rz.

    Before the i-th Rz the target has been flipped by the controls in
    gray(i), so control state j sees sign (-1)^popcount(gray(i) & j).
    Inverting that Walsh-Hadamard system gives the step angles.

    Args:
        angles (list): Rz angle per control state j (length 2^k)

    Returns:
        list: 2^k step angles
    """
    size = len(angles)
    return [
        sum((-1) ** popcount(gray_code(i) & j) * a for j, a in enumerate(angles)) / size
        for i in range(size)
    ]


def mcrx_gates(gate):
    """Gate list implementing one MCRX (or returning a plain Rx for k = 0)."""
    if gate.kind != "MCRX":
        raise ValueError(f"expected an MCRX gate, got {gate.kind}")

    target = gate.target
    if not gate.controls:
        return [Gate.rx(target, gate.angle)]

    controls = [q for q, _ in gate.controls]
    flips = [Gate.x(q) for q, val in gate.controls if val == 0]
    k = len(controls)

    # only the all-ones control state rotates
    step_angles = multiplexed_rz_angles([0.0] * ((1 << k) - 1) + [gate.angle])

    core = [Gate.h(target)]
    for i, angle in enumerate(step_angles):
        core.append(Gate.rz(target, angle))
        core.append(Gate.cx(controls[gray_flip_bit(i, k)], target))
    core.append(Gate.h(target))

    return flips + core + flips


def synthesize_mcrx(gate, num_qubits=None):
    """
    Circuit over {X, CX, Rx, Rz, H} equal to the given MCRX.

    The core uses exactly 2^k CX gates for k >= 1 controls and none for k = 0.

    Args:
        gate (Gate): MCRX gate
        num_qubits (int): Width of the returned circuit (defaults to the
            smallest width holding the gate)

    Returns:
        GateCircuit: Lowered circuit
    """
    if num_qubits is None:
        num_qubits = max(gate.qubits) + 1
    return GateCircuit(num_qubits, mcrx_gates(gate))


def lower_circuit(circuit):
    """Replace every MCRX gate by its synthesized gate sequence."""
    gates = []
    for gate in circuit.gates:
        if gate.kind == "MCRX":
            gates.extend(mcrx_gates(gate))
        else:
            gates.append(gate)
    return GateCircuit(circuit.num_qubits, gates)
