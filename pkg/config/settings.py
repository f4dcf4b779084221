"""
Compiler & Benchmark Configuration

Default numerical settings and the dataset presets used by the experiments.
Add more presets by following the same format.
"""

DATASET_PRESETS = {
    # Connected datasets: numeric-order Hamiltonian path plus a few chords
    'connected-8': {'kind': 'connected-path', 'num_vertices': 8, 'count': 200},
    'connected-16': {'kind': 'connected-path', 'num_vertices': 16, 'count': 200},
    'connected-32': {'kind': 'connected-path', 'num_vertices': 32, 'count': 200},
    'connected-64': {'kind': 'connected-path', 'num_vertices': 64, 'count': 200},
    'connected-128': {'kind': 'connected-path', 'num_vertices': 128, 'count': 200},

    # Sparse disconnected datasets used for the convergence study
    'disconnected-8': {'kind': 'disconnected-path', 'num_vertices': 8, 'count': 74},
    'disconnected-16': {'kind': 'disconnected-path', 'num_vertices': 16, 'count': 200},
    'disconnected-32': {'kind': 'disconnected-path', 'num_vertices': 32, 'count': 200},

    # Erdos-Renyi G(N, p) with p = 0.01
    'erdos-renyi-8': {'kind': 'erdos-renyi', 'num_vertices': 8, 'edge_probability': 0.01, 'count': 100},
    'erdos-renyi-16': {'kind': 'erdos-renyi', 'num_vertices': 16, 'edge_probability': 0.01, 'count': 100},
    'erdos-renyi-32': {'kind': 'erdos-renyi', 'num_vertices': 32, 'edge_probability': 0.01, 'count': 100},
    'erdos-renyi-64': {'kind': 'erdos-renyi', 'num_vertices': 64, 'edge_probability': 0.01, 'count': 100},
    'erdos-renyi-128': {'kind': 'erdos-renyi', 'num_vertices': 128, 'edge_probability': 0.01, 'count': 100},
}

# Available dataset presets
AVAILABLE_DATASETS = list(DATASET_PRESETS.keys())

# Default configuration
DEFAULT_CONFIG = {
    'tolerance': 1e-12,                  # Equality tolerance for operators and angles
    'max_unitary_qubits': 12,            # Dense unitary / evolution guard (2^12 dims)
    'max_pauli_qubits': 8,               # 4^n Pauli coefficient loop guard
    'max_witness_qubits': 6,             # Pauli witness search guard
    'default_times': [0.1, 0.5, 1.0],    # Evolution times for error sweeps
    'default_steps': [10, 20, 30, 40, 50, 60, 70, 80, 90, 100],
    'csv_schema_version': 1,             # Bumped whenever BenchRecord columns change
    'connected_extra_edges': 1,          # Chords always added to the path backbone
    'connected_bonus_edge_probability': 0.8,  # Chance of one more chord
    'rewire_probability': 0.0,           # Per-attempt chance to rewire a path edge
    'max_rewires': 2,                    # Rewire attempts per graph
    'disconnect_extra_cut_probability': 0.5,  # Chance of cutting a second backbone edge
    'max_retries': 100,                  # Reject-and-retry budget for generators
    'default_seed': 2024,                # Dataset seed when none is given
}
