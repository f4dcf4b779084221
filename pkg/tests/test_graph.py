"""
Unit Tests for Labeled Graphs

Tests Hamming utilities, edge validation, adjacency matrices and file formats.
"""

import tempfile
import unittest
from pathlib import Path

import numpy as np

from src.errors import GraphFormatError, ResourceLimitError
from src.graph import (
    LabeledGraph, bit_string, canonical_edge, flip_position, hamming_distance, popcount,
)


class TestHammingUtilities(unittest.TestCase):
    """Test cases for label helpers."""

    def test_hamming_distance_bit_strings(self):
        """Test distance between bit-string labels."""
        self.assertEqual(hamming_distance('000', '111'), 3)
        self.assertEqual(hamming_distance('010', '110'), 1)

    def test_hamming_distance_identical(self):
        """Test a label is at distance zero from itself."""
        self.assertEqual(hamming_distance(5, 5), 0)

    def test_hamming_distance_width_mismatch(self):
        """Test unequal bit-string widths are rejected."""
        with self.assertRaises(ValueError):
            hamming_distance('01', '001')

    def test_hamming_distance_width_overflow(self):
        """Test integer labels must fit the declared width."""
        with self.assertRaises(ValueError):
            hamming_distance(8, 1, width=3)

    def test_flip_position(self):
        """Test bit-flip position of distance-1 edges only."""
        self.assertEqual(flip_position(2, 6), 2)
        self.assertIsNone(flip_position(0, 3))
        self.assertIsNone(flip_position(4, 4))

    def test_small_helpers(self):
        """Test popcount, bit strings and canonical edges."""
        self.assertEqual(popcount(0b1011), 3)
        self.assertEqual(bit_string(6, 3), '110')
        self.assertEqual(canonical_edge(5, 2), (2, 5))


class TestLabeledGraph(unittest.TestCase):
    """Test cases for LabeledGraph."""

    def setUp(self):
        """Build the 4-cycle 00-01-10-11 used throughout."""
        self.graph = LabeledGraph.from_edges(2, [(0, 1), (2, 3), (0, 3), (1, 2)])

    def test_edges_are_canonical(self):
        """Test edges are sorted, deduplicated and smaller-label first."""
        graph = LabeledGraph.from_edges(2, [(3, 0), (0, 3), (1, 0)])
        self.assertEqual(graph.edges, ((0, 1), (0, 3)))

    def test_self_loop_rejected(self):
        """Test self-loops are refused."""
        with self.assertRaises(ValueError):
            LabeledGraph.from_edges(2, [(1, 1)])

    def test_label_out_of_range(self):
        """Test labels must fit n bits."""
        with self.assertRaises(ValueError):
            LabeledGraph.from_edges(2, [(0, 4)])

    def test_adjacency_matrix(self):
        """Test adjacency is symmetric 0/1 with zero diagonal."""
        matrix = self.graph.adjacency_matrix()
        self.assertEqual(matrix.shape, (4, 4))
        np.testing.assert_array_equal(matrix, matrix.T)
        self.assertTrue(np.all(np.diag(matrix) == 0))
        self.assertEqual(matrix.sum(), 2 * self.graph.num_edges)

    def test_adjacency_limit(self):
        """Test the dense guard above 12 qubits."""
        with self.assertRaises(ResourceLimitError):
            LabeledGraph(13).adjacency_matrix()

    def test_hamming_classes(self):
        """Test the per-distance edge census."""
        self.assertEqual(self.graph.hamming_classes(), {1: 2, 2: 2})

    def test_connectivity(self):
        """Test connectivity over all 2^n vertices."""
        self.assertTrue(self.graph.is_connected())
        self.assertFalse(LabeledGraph.from_edges(2, [(0, 1)]).is_connected())

    def test_json_roundtrip(self):
        """Test JSON serialization preserves the graph."""
        self.assertEqual(LabeledGraph.from_json(self.graph.to_json()), self.graph)

    def test_edgelist_requires_header(self):
        """Test edge-list files need the qubit header."""
        with self.assertRaises(GraphFormatError):
            LabeledGraph.from_edgelist("0 1\n")

    def test_edgelist_bad_line(self):
        """Test malformed edge-list lines report their line number."""
        with self.assertRaises(GraphFormatError) as ctx:
            LabeledGraph.from_edgelist("#qubits 2\n0 1 2\n")
        self.assertIn("line 2", str(ctx.exception))

    def test_invalid_records_are_format_errors(self):
        """Test parsed records that break graph rules raise format errors."""
        with self.assertRaises(GraphFormatError):
            LabeledGraph.from_dict({"num_qubits": 2, "edges": [[1, 1]]})
        with self.assertRaises(GraphFormatError):
            LabeledGraph.from_json('{"num_qubits": 1, "edges": [[0, 2]]}')
        with self.assertRaises(GraphFormatError):
            LabeledGraph.from_edgelist("#qubits 2\n1 1\n")

    def test_edgelist_bad_header(self):
        """Test a non-integer qubit header reports its line number."""
        with self.assertRaises(GraphFormatError) as ctx:
            LabeledGraph.from_edgelist("# comment\n#qubits abc\n0 1\n")
        self.assertIn("line 2", str(ctx.exception))

    def test_invalid_json(self):
        """Test broken JSON raises a format error."""
        with self.assertRaises(GraphFormatError):
            LabeledGraph.from_json("{not json")

    def test_save_and_load(self):
        """Test both file formats through save/load."""
        with tempfile.TemporaryDirectory() as tmp:
            for name in ('g.json', 'g.txt'):
                path = self.graph.save(Path(tmp) / name)
                self.assertEqual(LabeledGraph.load(path), self.graph)


if __name__ == '__main__':
    unittest.main()
