"""
Bitstring-Labeled Graph Module

Simple undirected graphs whose vertices are n-bit basis-state labels.
Vertex labels are unsigned integers; bit i is the i-th least significant bit,
so the label 0b110 has bit 0 = 0, bit 1 = 1, bit 2 = 1.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import networkx as nx
import numpy as np

from .errors import GraphFormatError, ResourceLimitError

# Dense operators above 2^12 dimensions are refused everywhere in the package.
MAX_DENSE_QUBITS = 12


def popcount(x):
    """Number of set bits of a non-negative integer."""
    return bin(x).count("1")


def hamming_distance(u, v, width=None):
    """
    Number of positions in which two labels differ.

    Labels may be integers or bit strings such as '010'. Bit strings must have
    the same length; integer labels must fit in `width` bits when it is given.

    Args:
        u (int | str): First label
        v (int | str): Second label
        width (int): Optional label width in bits

    Returns:
        int: |{i : u_i != v_i}|
    """
    if isinstance(u, str) or isinstance(v, str):
        if not (isinstance(u, str) and isinstance(v, str)):
            raise ValueError("cannot compare a bit string with an integer label")
        if len(u) != len(v):
            raise ValueError(f"label width mismatch: {len(u)} vs {len(v)} bits")
        if set(u + v) - {"0", "1"}:
            raise ValueError(f"labels must be bit strings, got {u!r} and {v!r}")
        return sum(a != b for a, b in zip(u, v))

    if u < 0 or v < 0:
        raise ValueError("labels must be non-negative")
    if width is not None and (u >> width or v >> width):
        raise ValueError(f"labels {u}, {v} do not fit in {width} bits")
    return popcount(u ^ v)


def flip_position(u, v):
    """Bit-flip position of a Hamming-distance-1 edge, or None."""
    diff = u ^ v
    if diff == 0 or diff & (diff - 1):
        return None
    return diff.bit_length() - 1


def bit_string(label, width):
    """Render a label as a fixed-width bit string (most significant bit first)."""
    return format(label, f"0{width}b")


def canonical_edge(u, v):
    """Unordered pair stored smaller label first."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LabeledGraph:
    """
    Simple undirected graph embedded in a 2^n-dimensional state space.

    Edges are kept as a sorted tuple of canonical pairs, so two graphs with the
    same edge set compare (and serialize) identically.
    """

    num_qubits: int
    edges: tuple = ()

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {self.num_qubits}")
        limit = 1 << self.num_qubits
        canonical = set()
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError(f"edge {edge!r} is not a pair")
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u} is not allowed")
            if not (0 <= u < limit and 0 <= v < limit):
                raise ValueError(f"edge ({u}, {v}) does not fit in {self.num_qubits} bits")
            canonical.add(canonical_edge(u, v))
        object.__setattr__(self, "edges", tuple(sorted(canonical)))

    @classmethod
    def from_edges(cls, num_qubits, edges):
        return cls(num_qubits, tuple(tuple(e) for e in edges))

    @property
    def num_vertices(self):
        return 1 << self.num_qubits

    @property
    def num_edges(self):
        return len(self.edges)

    def has_edge(self, u, v):
        return canonical_edge(u, v) in set(self.edges)

    def adjacency_matrix(self):
        """
        Dense 2^n x 2^n symmetric 0/1 adjacency matrix with zero diagonal.

        Returns:
            np.ndarray: Real adjacency matrix
        """
        if self.num_qubits > MAX_DENSE_QUBITS:
            raise ResourceLimitError(
                f"adjacency matrix of a {self.num_qubits}-qubit graph exceeds "
                f"the {MAX_DENSE_QUBITS}-qubit dense limit"
            )
        matrix = np.zeros((self.num_vertices, self.num_vertices))
        if self.edges:
            rows, cols = np.array(self.edges).T
            matrix[rows, cols] = 1.0
            matrix[cols, rows] = 1.0
        return matrix

    def to_networkx(self):
        """networkx.Graph on all 2^n vertices (isolated ones included)."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from(self.edges)
        return graph

    def hamming_classes(self):
        """Counts |H_k| of edges whose endpoints are Hamming distance k apart."""
        return dict(sorted(Counter(popcount(u ^ v) for u, v in self.edges).items()))

    def is_connected(self):
        return nx.is_connected(self.to_networkx())

    # -- file formats -----------------------------------------------------

    def to_dict(self):
        return {"num_qubits": self.num_qubits, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls.from_edges(int(data["num_qubits"]), data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"malformed graph record: {exc}") from exc

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid graph JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_edgelist(self):
        lines = [f"#qubits {self.num_qubits}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text):
        num_qubits = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == "qubits":
                    try:
                        num_qubits = int(parts[1])
                    except ValueError as exc:
                        raise GraphFormatError(f"line {lineno}: bad qubit count: {exc}") from exc
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: {exc}") from exc
        if num_qubits is None:
            raise GraphFormatError("edge list is missing its '#qubits n' header")
        try:
            return cls.from_edges(num_qubits, edges)
        except ValueError as exc:
            raise GraphFormatError(f"invalid edge list: {exc}") from exc

    def save(self, path):
        """Write as JSON (.json) or edge-list text (any other suffix)."""
        path = Path(path)
        text = self.to_json() if path.suffix == ".json" else self.to_edgelist()
        path.write_text(text)
        return path

    @classmethod
    def load(cls, path):
        path = Path(path)
        text = path.read_text()
        if path.suffix == ".json":
            return cls.from_json(text)
        return cls.from_edgelist(text)


def adjacency_matrix(graph):
    """Module-level form of LabeledGraph.adjacency_matrix."""
    return graph.adjacency_matrix()
