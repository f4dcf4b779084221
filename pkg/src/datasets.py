"""
Dataset Generation Module

Seeded generators for the graph families used in the experiments:
- hypercube Q_n
- Erdos-Renyi G(N, p)
- connected graphs built on the numeric-order Hamiltonian path
- sparse disconnected graphs derived from the connected family

Per-graph seeds are spawned from the dataset seed with numpy's SeedSequence;
all randomness we draw ourselves comes from the PCG64 bit generator, and
Erdos-Renyi sampling is delegated to networkx.gnp_random_graph with the
spawned integer seed.
"""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
import pandas as pd

from config.settings import DEFAULT_CONFIG
from .errors import CTQWError
from .graph import LabeledGraph, canonical_edge

logger = logging.getLogger(__name__)

DATASET_KINDS = ('connected-path', 'disconnected-path', 'erdos-renyi', 'hypercube')


@dataclass(frozen=True)
class DatasetSpec:
    """Description of a reproducible graph dataset."""

    kind: str
    num_vertices: int
    edge_probability: float = 0.0
    seed: int = 0
    count: int = 1

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise ValueError(f"unknown dataset kind {self.kind!r}; expected one of {DATASET_KINDS}")
        n = self.num_vertices
        if n < 2 or n & (n - 1):
            raise ValueError(f"num_vertices must be a power of two >= 2, got {n}")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError(f"edge_probability must lie in [0, 1], got {self.edge_probability}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.count < 0:
            raise ValueError(f"count must be non-negative, got {self.count}")

    @property
    def num_qubits(self):
        return self.num_vertices.bit_length() - 1

    @property
    def name(self):
        if self.kind == 'erdos-renyi':
            return f"{self.kind}-{self.num_vertices}-p{self.edge_probability:g}"
        return f"{self.kind}-{self.num_vertices}"

    def to_dict(self):
        return {
            'kind': self.kind,
            'num_vertices': self.num_vertices,
            'edge_probability': self.edge_probability,
            'seed': self.seed,
            'count': self.count,
        }


class DatasetGenerator:
    """
    Generates graph datasets from a DatasetSpec.

    Every generator is a pure function of (spec, seed): the same spec always
    produces the same edge lists.
    """

    def __init__(self, config=None):
        self.config = {**DEFAULT_CONFIG, **(config or {})}

    def graph_seeds(self, spec):
        """
        Spawn one 64-bit seed per graph from the dataset seed.

        Args:
            spec (DatasetSpec): Dataset description

        Returns:
            list: `spec.count` integer seeds
        """
        children = np.random.SeedSequence(spec.seed).spawn(spec.count)
        return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]

    def generate(self, spec):
        """Dispatch on spec.kind and return (seeds, graphs)."""
        if spec.kind == 'hypercube':
            graph = self.gen_hypercube(spec.num_qubits)
            return [spec.seed] * spec.count, [graph] * spec.count
        generators = {
            'connected-path': self.gen_connected_path,
            'disconnected-path': self.gen_disconnected_path,
            'erdos-renyi': self.gen_erdos_renyi,
        }
        logger.debug("generating %d graphs for %s (seed %d)", spec.count, spec.name, spec.seed)
        return self.graph_seeds(spec), generators[spec.kind](spec)

    @staticmethod
    def gen_hypercube(n):
        """
        Hypercube Q_n: edges between labels at Hamming distance 1.

        Args:
            n (int): Number of qubits (n >= 1)

        Returns:
            LabeledGraph: Graph with n * 2^(n-1) edges
        """
        if n < 1:
            raise ValueError(f"hypercube dimension must be >= 1, got {n}")
        edges = [(x, x | (1 << bit)) for x in range(1 << n) for bit in range(n) if not x >> bit & 1]
        return LabeledGraph.from_edges(n, edges)

    def gen_erdos_renyi(self, spec):
        """Independent edges with probability p, one graph per spawned seed."""
        if spec.kind != 'erdos-renyi':
            raise ValueError(f"expected an erdos-renyi spec, got {spec.kind!r}")
        graphs = []
        for seed in self.graph_seeds(spec):
            sample = nx.gnp_random_graph(spec.num_vertices, spec.edge_probability, seed=seed)
            graphs.append(LabeledGraph.from_edges(spec.num_qubits, sample.edges()))
        return graphs

    def gen_connected_path(self, spec):
        """
        Connected graphs on the numeric-order Hamiltonian path 0 -> 1 -> ... -> N-1.

        Each graph gets `connected_extra_edges` random chords plus one more with
        probability `connected_bonus_edge_probability`. With a non-zero
        `rewire_probability`, up to `max_rewires` interior path edges are moved
        to random chords, rejecting any move that disconnects the graph.
        """
        if spec.kind not in ('connected-path', 'disconnected-path'):
            raise ValueError(f"expected a path-based spec, got {spec.kind!r}")
        return [
            LabeledGraph.from_edges(spec.num_qubits, self._connected_edges(spec.num_vertices, seed))
            for seed in self.graph_seeds(spec)
        ]

    def gen_disconnected_path(self, spec):
        """
        Sparse disconnected graphs: a connected-path graph with one or two
        backbone edges cut. Cuts that leave the graph connected are retried.
        """
        if spec.kind != 'disconnected-path':
            raise ValueError(f"expected a disconnected-path spec, got {spec.kind!r}")
        graphs = []
        for seed in self.graph_seeds(spec):
            rng = self._rng([seed, 1])
            edges = self._connected_edges(spec.num_vertices, seed)
            backbone = [e for e in sorted(edges) if e[1] == e[0] + 1]
            cuts = 1 + int(rng.random() < self.config['disconnect_extra_cut_probability'])
            cuts = min(cuts, len(backbone))
            for attempt in range(self.config['max_retries']):
                picked = rng.choice(len(backbone), size=cuts, replace=False)
                candidate = edges - {backbone[i] for i in picked}
                if not self._is_connected(spec.num_vertices, candidate):
                    edges = candidate
                    break
                # chords can close a cycle over the whole backbone
                if attempt % 10 == 9:
                    cuts = min(cuts + 1, len(backbone))
            else:
                raise CTQWError(f"could not disconnect graph with seed {seed}")
            graphs.append(LabeledGraph.from_edges(spec.num_qubits, edges))
        return graphs

    # -- helpers -------------------------------------------------------------

    @staticmethod
    def _rng(seed):
        return np.random.Generator(np.random.PCG64(seed))

    @staticmethod
    def _is_connected(num_vertices, edges):
        graph = nx.Graph()
        graph.add_nodes_from(range(num_vertices))
        graph.add_edges_from(edges)
        return nx.is_connected(graph)

    @staticmethod
    def _random_chord(rng, num_vertices, edges):
        free = [
            (u, v) for u in range(num_vertices) for v in range(u + 1, num_vertices)
            if (u, v) not in edges
        ]
        if not free:
            return None
        return free[rng.integers(len(free))]

    def _connected_edges(self, num_vertices, seed):
        rng = self._rng(seed)
        edges = {(x, x + 1) for x in range(num_vertices - 1)}

        extra = self.config['connected_extra_edges']
        extra += int(rng.random() < self.config['connected_bonus_edge_probability'])
        for _ in range(extra):
            chord = self._random_chord(rng, num_vertices, edges)
            if chord is None:
                break
            edges.add(chord)

        for _ in range(self.config['max_rewires']):
            if rng.random() >= self.config['rewire_probability']:
                continue
            interior = [(x, x + 1) for x in range(1, num_vertices - 2) if (x, x + 1) in edges]
            if not interior:
                break
            for _ in range(self.config['max_retries']):
                removed = interior[rng.integers(len(interior))]
                chord = self._random_chord(rng, num_vertices, edges)
                if chord is None:
                    break
                candidate = (edges - {removed}) | {chord}
                if self._is_connected(num_vertices, candidate):
                    edges = candidate
                    break
        return edges


def dataset_properties(graphs):
    """
    Summary statistics of a dataset (edges, degrees, density, bipartiteness).

    Args:
        graphs (list): LabeledGraph instances

    Returns:
        dict: mean/std per property plus the bipartite fraction and the mean
            Hamming-class census
    """
    rows = []
    for graph in graphs:
        nx_graph = graph.to_networkx()
        degrees = [d for _, d in nx_graph.degree()]
        rows.append({
            'edges': graph.num_edges,
            'avg_degree': 2.0 * graph.num_edges / graph.num_vertices,
            'max_degree': max(degrees) if degrees else 0,
            'density': nx.density(nx_graph),
            'bipartite': nx.is_bipartite(nx_graph),
            'connected': nx.is_connected(nx_graph),
        })
    if not rows:
        return {'count': 0}

    df = pd.DataFrame(rows)
    stats = {'count': len(df)}
    for column in ('edges', 'avg_degree', 'max_degree', 'density'):
        stats[column] = {
            'mean': float(df[column].mean()),
            'std': float(df[column].std(ddof=0)),
        }
    stats['bipartite_fraction'] = float(df['bipartite'].mean())
    stats['connected_fraction'] = float(df['connected'].mean())

    census = pd.DataFrame([g.hamming_classes() for g in graphs]).fillna(0)
    stats['hamming_classes'] = {int(k): float(v) for k, v in census.mean().sort_index().items()}
    return stats


def numeric_path(num_qubits):
    """The bare numeric-order Hamiltonian path on 2^n vertices."""
    n = 1 << num_qubits
    return LabeledGraph.from_edges(num_qubits, [canonical_edge(x, x + 1) for x in range(n - 1)])


def path_hamming_census(num_qubits):
    """Expected |H_k| of the numeric path: 2^(n-k) for 1 <= k <= n."""
    return {k: 2 ** (num_qubits - k) for k in range(1, num_qubits + 1)}


__all__ = [
    'DATASET_KINDS', 'DatasetSpec', 'DatasetGenerator', 'dataset_properties',
    'numeric_path', 'path_hamming_census',
]
