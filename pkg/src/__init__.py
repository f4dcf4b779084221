"""
Quantum Walk Circuit Compiler
Compiles continuous-time quantum walks on bitstring-labeled graphs into gate
circuits via matching decomposition, with a Pauli-decomposition baseline,
dense verification and a benchmark harness.
"""

__version__ = "1.0.0"
__author__ = "Quantum Walk Team"

from .errors import CTQWError, GraphFormatError, ResourceLimitError, NumericalGuardError
from .graph import LabeledGraph, hamming_distance
from .datasets import DatasetSpec, DatasetGenerator, dataset_properties
from .matching import Matching, CompressedEdge, MatchingDecomposer, expand_edge
from .circuit import Gate, GateCircuit, cx_count, depth
from .synthesis import synthesize_mcrx, lower_circuit
from .optimizer import PeepholeOptimizer, peephole_optimize
from .simulator import (
    circuit_unitary, exact_evolution, spectral_norm_diff, commutator_norm, operators_equal,
)
from .compilers import PauliTerm, TrotterPlan, MatchingCompiler, PauliCompiler
from .commuting import VertexPermutation, UnionStructure, CommutativityAnalyzer
from .benchmark import BenchRecord, BenchmarkRunner

__all__ = [
    'CTQWError',
    'GraphFormatError',
    'ResourceLimitError',
    'NumericalGuardError',
    'LabeledGraph',
    'hamming_distance',
    'DatasetSpec',
    'DatasetGenerator',
    'dataset_properties',
    'Matching',
    'CompressedEdge',
    'MatchingDecomposer',
    'expand_edge',
    'Gate',
    'GateCircuit',
    'cx_count',
    'depth',
    'synthesize_mcrx',
    'lower_circuit',
    'PeepholeOptimizer',
    'peephole_optimize',
    'circuit_unitary',
    'exact_evolution',
    'spectral_norm_diff',
    'commutator_norm',
    'operators_equal',
    'PauliTerm',
    'TrotterPlan',
    'MatchingCompiler',
    'PauliCompiler',
    'VertexPermutation',
    'UnionStructure',
    'CommutativityAnalyzer',
    'BenchRecord',
    'BenchmarkRunner',
]
