"""
Commutativity Analysis Module

Structural tests for when two subgraphs (or matchings) have commuting
adjacency matrices, vertex relabelings, and the hypercube family whose
bit-position matchings commute while its Pauli decomposition does not.

Relabeling convention: the permutation matrix of f has a 1 in row f(x) of
column x, so the relabeled adjacency is U_f A U_f^T.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from config.settings import DEFAULT_CONFIG
from .compilers import PauliCompiler
from .datasets import DatasetGenerator
from .errors import ResourceLimitError
from .graph import LabeledGraph, flip_position
from .matching import Matching, MatchingDecomposer

logger = logging.getLogger(__name__)

COMMUTING_KINDS = frozenset({"K1", "K2", "C4"})


@dataclass(frozen=True)
class VertexPermutation:
    """Bijection on the 2^n vertex labels."""

    num_qubits: int
    mapping: tuple

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        size = 1 << self.num_qubits
        if len(mapping) != size or sorted(mapping) != list(range(size)):
            raise ValueError(f"mapping is not a bijection on {size} labels")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, num_qubits):
        return cls(num_qubits, tuple(range(1 << num_qubits)))

    @classmethod
    def from_function(cls, num_qubits, func):
        return cls(num_qubits, tuple(func(x) for x in range(1 << num_qubits)))

    def __call__(self, label):
        return self.mapping[label]

    def compose(self, other):
        """self after other."""
        if other.num_qubits != self.num_qubits:
            raise ValueError("permutations act on different label widths")
        return VertexPermutation(self.num_qubits, tuple(self.mapping[x] for x in other.mapping))

    def matrix(self):
        size = 1 << self.num_qubits
        perm = np.zeros((size, size))
        perm[list(self.mapping), np.arange(size)] = 1.0
        return perm


@dataclass(frozen=True)
class UnionComponent:
    """One connected component of the union of two matchings."""

    kind: str
    length: int
    vertices: tuple

    def __str__(self):
        if self.kind in ("PATH", "CYCLE"):
            return f"{self.kind}({self.length})"
        return self.kind


@dataclass(frozen=True)
class UnionStructure:
    """Components of a matching union; they partition the 2^n vertices."""

    components: tuple

    @property
    def commute(self):
        return all(c.kind in COMMUTING_KINDS for c in self.components)

    def census(self):
        return dict(Counter(str(c) for c in self.components))


class CommutativityAnalyzer:
    """
    Commutation checks for subgraphs, matchings and relabeled hypercubes.

    Two matchings commute exactly when every component of their union is an
    isolated vertex, a single (possibly shared) edge or a 4-cycle.
    """

    def __init__(self, config=None):
        self.config = {**DEFAULT_CONFIG, **(config or {})}
        self.pauli = PauliCompiler(self.config)

    @staticmethod
    def _neighbours(graph):
        table = {}
        for u, v in graph.edges:
            table.setdefault(u, []).append(v)
            table.setdefault(v, []).append(u)
        return table

    def subgraphs_commute_by_paths(self, first, second):
        """
        Path-count test: for every pair (u, v), the number of length-2 paths
        u-w-v taking a `first` edge then a `second` edge equals the number
        taking a `second` edge then a `first` edge.
        """
        if first.num_qubits != second.num_qubits:
            raise ValueError("subgraphs live on different vertex spaces")
        near_first, near_second = self._neighbours(first), self._neighbours(second)
        forward, backward = Counter(), Counter()
        for w in set(near_first) & set(near_second):
            for u in near_first[w]:
                for v in near_second[w]:
                    forward[(u, v)] += 1
                    backward[(v, u)] += 1
        return forward == backward

    def classify_matching_union(self, first, second):
        """
        Components of the union multigraph of two matchings.

        An edge present in both matchings forms a 2-cycle and counts as K2.

        Returns:
            UnionStructure: K1 / K2 / C4 / PATH(len) / CYCLE(len) components
                ordered by smallest vertex
        """
        if first.num_qubits != second.num_qubits:
            raise ValueError("matchings live on different vertex spaces")
        union = nx.MultiGraph()
        union.add_nodes_from(range(1 << first.num_qubits))
        union.add_edges_from(first.edges)
        union.add_edges_from(second.edges)

        components = []
        for nodes in nx.connected_components(union):
            vertices = tuple(sorted(nodes))
            edges = union.subgraph(nodes).number_of_edges()
            if len(vertices) == 1:
                kind, length = "K1", 0
            elif edges == len(vertices) - 1:
                kind, length = ("K2", 1) if edges == 1 else ("PATH", edges)
            elif len(vertices) == 2:
                kind, length = "K2", 1
            elif len(vertices) == 4:
                kind, length = "C4", 4
            else:
                kind, length = "CYCLE", edges
            components.append(UnionComponent(kind, length, vertices))
        components.sort(key=lambda c: c.vertices[0])
        return UnionStructure(tuple(components))

    def matchings_pairwise_commute(self, matchings):
        return all(self.classify_matching_union(a, b).commute for a, b in combinations(matchings, 2))

    # -- relabelings ---------------------------------------------------------

    @staticmethod
    def relabel_graph(graph, perm):
        """Map every edge (u, v) to (perm(u), perm(v))."""
        if perm.num_qubits != graph.num_qubits:
            raise ValueError(
                f"permutation on {perm.num_qubits} qubits cannot relabel a {graph.num_qubits}-qubit graph"
            )
        return LabeledGraph.from_edges(graph.num_qubits, [(perm(u), perm(v)) for u, v in graph.edges])

    @staticmethod
    def relabel_matching(matching, perm):
        return Matching(matching.num_qubits, tuple((perm(u), perm(v)) for u, v in matching.edges))

    @staticmethod
    def modular_times3_perm(num_qubits):
        """x -> 3x mod 2^n; a bijection because 3 is odd."""
        if num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
        size = 1 << num_qubits
        return VertexPermutation.from_function(num_qubits, lambda x: (3 * x) % size)

    @staticmethod
    def local_block_perm(num_qubits, position):
        """x -> 3x mod 8 on bits position..position+2, identity on the other bits."""
        if not 0 <= position <= num_qubits - 3:
            raise ValueError(f"block position must lie in 0..{num_qubits - 3}, got {position}")
        block = 7 << position

        def relabel(x):
            bits = (x >> position) & 7
            return (x & ~block) | (((3 * bits) % 8) << position)

        return VertexPermutation.from_function(num_qubits, relabel)

    @staticmethod
    def bit_position_decomposition(graph):
        """
        Matchings {edges flipping bit j} for a graph whose edges all have
        Hamming distance 1, in ascending j (empty groups omitted).
        """
        groups = {}
        for u, v in graph.edges:
            position = flip_position(u, v)
            if position is None:
                raise ValueError(f"edge ({u}, {v}) flips more than one bit")
            groups.setdefault(position, []).append((u, v))
        return [Matching(graph.num_qubits, tuple(groups[j])) for j in sorted(groups)]

    def relabeled_hypercube(self, num_qubits, position):
        """(Q_n, block relabeling at `position`, relabeled Q_n)."""
        cube = DatasetGenerator.gen_hypercube(num_qubits)
        perm = self.local_block_perm(num_qubits, position)
        return cube, perm, self.relabel_graph(cube, perm)

    # -- witness search ------------------------------------------------------

    def _candidate_matchings(self, graph, source, perm):
        if source is not None:
            perm = perm or VertexPermutation.identity(source.num_qubits)
            matchings = [self.relabel_matching(m, perm) for m in self.bit_position_decomposition(source)]
            covered = {e for m in matchings for e in m.edges}
            if covered != set(graph.edges):
                raise ValueError("relabeled source matchings do not cover the graph's edges")
            return matchings
        if all(flip_position(u, v) is not None for u, v in graph.edges):
            return self.bit_position_decomposition(graph)
        return MatchingDecomposer().greedy_matching_decompose(graph)

    def first_anticommuting_pair(self, terms):
        """First (i < j) pair in term order whose strings anticommute, or None."""
        for a, b in combinations(terms, 2):
            if a.anticommutes_with(b):
                return a, b
        return None

    def pauli_witness_check(self, graph, source=None, perm=None):
        """
        Compare the matching and Pauli pictures of one graph.

        Args:
            graph (LabeledGraph): Graph to test
            source (LabeledGraph): Optional unrelabeled graph whose
                bit-position matchings, mapped through `perm`, decompose `graph`
            perm (VertexPermutation): Relabeling taking `source` to `graph`

        Returns:
            dict: commuting_matching_found, pauli_noncommuting and the first
                anticommuting witness pair as [string, coefficient] entries
        """
        limit = self.config['max_witness_qubits']
        if graph.num_qubits > limit:
            raise ResourceLimitError(f"witness search is limited to {limit} qubits, got {graph.num_qubits}")

        matchings = self._candidate_matchings(graph, source, perm)
        terms = self.pauli.pauli_decompose(graph.adjacency_matrix(), graph.num_qubits)
        witness = self.first_anticommuting_pair(terms)
        return {
            'commuting_matching_found': self.matchings_pairwise_commute(matchings),
            'pauli_noncommuting': witness is not None,
            'witness_terms': [] if witness is None else [[t.string, t.coefficient] for t in witness],
        }

    def report(self, graph, graph_id, source=None, perm=None):
        """Report record for the command line."""
        return {'graph_id': graph_id, **self.pauli_witness_check(graph, source, perm)}


__all__ = [
    'VertexPermutation', 'UnionComponent', 'UnionStructure', 'CommutativityAnalyzer',
    'COMMUTING_KINDS',
]
