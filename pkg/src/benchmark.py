"""
Benchmark Harness Module

Generates graph datasets, compiles every graph with both methods over a
(t, N) grid, and turns the resulting records into summary and plot-data
tables.

Per record:
- cx_count / depth: full N-step circuit after MCRX lowering and the peephole pass
- error_2norm: ||e^{-iAt} - U_step^N||_2, only when the graph fits the dense budget
"""

import json
import logging
import time
from dataclasses import asdict, dataclass, fields
from multiprocessing import Pool
from pathlib import Path

import numpy as np
import pandas as pd

from config.settings import DEFAULT_CONFIG
from .circuit import cx_count, depth
from .compilers import MatchingCompiler, PauliCompiler, TrotterPlan
from .datasets import DatasetGenerator, dataset_properties
from .errors import GraphFormatError
from .graph import LabeledGraph
from .matching import MatchingDecomposer
from .optimizer import PeepholeOptimizer
from .simulator import circuit_unitary, exact_evolution, spectral_norm_diff
from .synthesis import lower_circuit

logger = logging.getLogger(__name__)

METHODS = ('matching', 'pauli')
GROUP_COLUMNS = ['dataset', 'num_vertices', 'method', 't', 'trotter_steps']


@dataclass(frozen=True)
class BenchRecord:
    """One (graph, method, t, N, repeat) measurement."""

    graph_id: str
    dataset: str
    num_vertices: int
    method: str
    t: float
    trotter_steps: int
    cx_count: int
    depth: int
    error_2norm: float = None
    seed: int = 0
    wall_time_ms: int = 0
    repeat: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.cx_count < 0 or self.depth < 0:
            raise ValueError("cx_count and depth must be non-negative")

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def sort_key(self):
        return (self.graph_id, self.method, self.t, self.trotter_steps, self.repeat)


def evaluate_graph(graph, method, t, steps, config=None, compute_error=True, scan_seed=None):
    """
    Compile one graph and measure it.

    Args:
        graph (LabeledGraph): Input graph
        method (str): 'matching' or 'pauli'
        t (float): Evolution time
        steps (int): Trotter steps N
        config (dict): Overrides for DEFAULT_CONFIG
        compute_error (bool): Skip the dense error when False
        scan_seed (int): Matching scan seed (None keeps the deterministic order)

    Returns:
        dict: cx_count, depth, error_2norm (None when skipped), wall_time_ms
    """
    config = {**DEFAULT_CONFIG, **(config or {})}
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")

    started = time.perf_counter()
    if method == 'matching':
        compiler = MatchingCompiler(config, decomposer=MatchingDecomposer(scan_seed))
    else:
        compiler = PauliCompiler(config)

    # one step at angle t / N; the full circuit is that step repeated
    step = compiler.compile(graph, TrotterPlan(t / steps, 1))
    full = PeepholeOptimizer(config['tolerance']).optimize(lower_circuit(step.repeat(steps)))

    error = None
    if compute_error and graph.num_qubits <= config['max_unitary_qubits']:
        exact = exact_evolution(graph.adjacency_matrix(), t)
        trotter = np.linalg.matrix_power(circuit_unitary(step, config['max_unitary_qubits']), steps)
        error = spectral_norm_diff(exact, trotter)

    return {
        'cx_count': cx_count(full),
        'depth': depth(full),
        'error_2norm': error,
        'wall_time_ms': int(round(1000 * (time.perf_counter() - started))),
    }


def _graph_records(job):
    """All records of one graph; top level so worker processes can pickle it."""
    entry, methods, times, steps_list, compute_error, repeat, config = job
    graph_id, dataset, seed, graph = entry
    records = []
    for method in methods:
        scan_seeds = [None] if method == 'pauli' or repeat == 0 else list(range(1, repeat + 1))
        for scan_seed in scan_seeds:
            run = 0 if scan_seed is None else scan_seed
            for t in times:
                for steps in steps_list:
                    result = evaluate_graph(graph, method, t, steps, config, compute_error, scan_seed)
                    records.append(BenchRecord(
                        graph_id=graph_id, dataset=dataset, num_vertices=graph.num_vertices,
                        method=method, t=float(t), trotter_steps=int(steps),
                        seed=int(seed), repeat=run, **result,
                    ))
    logger.debug("graph %s: %d records", graph_id, len(records))
    return records


class BenchmarkRunner:
    """
    Drives dataset generation, method comparison and plot-data reports.
    """

    def __init__(self, config=None, verbose=True):
        self.config = {**DEFAULT_CONFIG, **(config or {})}
        self.verbose = verbose
        self.generator = DatasetGenerator(self.config)

    # -- generate ------------------------------------------------------------

    def cmd_generate(self, spec, out_dir):
        """
        Write one JSON file per graph plus manifest.json.

        Args:
            spec (DatasetSpec): Dataset description
            out_dir (str | Path): Output directory (created if missing)

        Returns:
            list: Paths of the written graph files
        """
        out_dir = Path(out_dir)
        seeds, graphs = self.generator.generate(spec)
        manifest = {
            'dataset': spec.name,
            'spec': spec.to_dict(),
            'graphs': [],
            'properties': dataset_properties(graphs),
        }

        paths = []
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            for index, (seed, graph) in enumerate(zip(seeds, graphs)):
                path = out_dir / f"graph_{index:04d}.json"
                path.write_text(graph.to_json())
                paths.append(path)
                manifest['graphs'].append({'graph_id': path.stem, 'file': path.name, 'seed': seed})
            manifest_path = out_dir / 'manifest.json'
            manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True))
        except OSError as exc:
            raise OSError(f"cannot write dataset to {out_dir}: {exc}") from exc

        if self.verbose:
            edges = manifest['properties'].get('edges', {'mean': 0.0, 'std': 0.0})
            print(f"   ✅ Wrote {len(paths):,} graphs to {out_dir}")
            print(f"   Edges per graph: {edges['mean']:.1f} ± {edges['std']:.1f}")
        return paths

    @staticmethod
    def load_graphs(directory):
        """
        Read a generated dataset.

        Returns:
            list: (graph_id, dataset, seed, LabeledGraph) tuples in manifest order
        """
        directory = Path(directory)
        manifest_path = directory / 'manifest.json'
        try:
            manifest = json.loads(manifest_path.read_text())
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid manifest {manifest_path}: {exc}") from exc

        entries = []
        for item in manifest.get('graphs', []):
            graph = LabeledGraph.load(directory / item['file'])
            entries.append((item['graph_id'], manifest['dataset'], int(item['seed']), graph))
        return entries

    # -- compare -------------------------------------------------------------

    def cmd_compare(self, entries, times, steps_list, methods=METHODS, compute_error=True,
                    repeat=0, workers=1):
        """
        Compile every graph under every (method, t, N) and collect records.

        Args:
            entries (list): (graph_id, dataset, seed, LabeledGraph) tuples
            times (list): Evolution times
            steps_list (list): Trotter step counts
            methods (tuple): Subset of ('matching', 'pauli')
            compute_error (bool): Compute the dense error when the graph fits
            repeat (int): Number of shuffled matching scan orders (0 = deterministic)
            workers (int): Worker processes (1 = run in this process)

        Returns:
            list: BenchRecord objects sorted by graph_id
        """
        unknown = [m for m in methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown method(s) {unknown}; expected a subset of {METHODS}")
        if repeat < 0:
            raise ValueError(f"repeat must be non-negative, got {repeat}")
        if any(int(n) < 1 for n in steps_list):
            raise ValueError(f"Trotter steps must be positive, got {list(steps_list)}")

        jobs = [(entry, tuple(methods), list(times), list(steps_list), compute_error, repeat,
                 self.config) for entry in entries]
        total = len(jobs)
        if self.verbose:
            print(f"📊 Comparing {', '.join(methods)} on {total:,} graphs...\n")

        records = []
        chunk_size = max(1, min(50, total // 10 or 1))
        pool = Pool(workers) if workers > 1 else None
        try:
            for start in range(0, total, chunk_size):
                chunk = jobs[start:start + chunk_size]
                results = pool.map(_graph_records, chunk) if pool else map(_graph_records, chunk)
                for graph_records in results:
                    records.extend(graph_records)
                done = start + len(chunk)
                if self.verbose:
                    print(f"   Processed {done:,} / {total:,} graphs ({(done / total) * 100:.1f}%)")
        finally:
            if pool is not None:
                pool.close()
                pool.join()

        return sorted(records, key=BenchRecord.sort_key)

    # -- tables --------------------------------------------------------------

    @staticmethod
    def records_frame(records):
        if not records:
            return pd.DataFrame(columns=BenchRecord.columns())
        return pd.DataFrame([asdict(r) for r in records], columns=BenchRecord.columns())

    @staticmethod
    def summarize(records):
        """
        Mean, std and CV = std / mean per (dataset, num_vertices, method, t, N).

        Args:
            records (list | DataFrame): Bench records

        Returns:
            DataFrame: One row per cell
        """
        df = records if isinstance(records, pd.DataFrame) else BenchmarkRunner.records_frame(records)
        if df.empty:
            return pd.DataFrame(columns=GROUP_COLUMNS + ['count'])

        df = df.assign(error_2norm=pd.to_numeric(df['error_2norm'], errors='coerce'))
        grouped = df.groupby(GROUP_COLUMNS, sort=True)
        summary = grouped.size().rename('count').to_frame()
        for column in ('cx_count', 'depth', 'error_2norm'):
            mean = grouped[column].mean()
            std = grouped[column].std(ddof=0).fillna(0.0)
            summary[f'{column}_mean'] = mean
            summary[f'{column}_std'] = std
            summary[f'{column}_cv'] = (std / mean).where(mean > 0)
        return summary.reset_index()

    def write_records(self, records, path, fmt='csv'):
        """
        Write records as versioned CSV (first line '# schema_version=N') or JSON.
        """
        path = Path(path)
        version = self.config['csv_schema_version']
        df = self.records_frame(records)
        try:
            if fmt == 'csv':
                with path.open('w', newline='') as handle:
                    handle.write(f"# schema_version={version}\n")
                    df.to_csv(handle, index=False)
            elif fmt == 'json':
                payload = {'schema_version': version, 'records': [asdict(r) for r in records]}
                path.write_text(json.dumps(payload, indent=2))
            else:
                raise ValueError(f"unknown output format {fmt!r}; expected 'csv' or 'json'")
        except OSError as exc:
            raise OSError(f"cannot write records to {path}: {exc}") from exc
        return path

    def read_records(self, path):
        """
        Parse a records CSV written by write_records.

        Raises:
            GraphFormatError: On a wrong schema header, missing columns or a
                row that does not parse (the row number is in the message)
        """
        path = Path(path)
        text = path.read_text()
        if not text.strip():
            return self.records_frame([])

        lines = text.splitlines()
        expected = f"# schema_version={self.config['csv_schema_version']}"
        if lines[0].strip() != expected:
            raise GraphFormatError(f"{path}: row 1: expected header {expected!r}, got {lines[0]!r}")
        if len(lines) < 2 or not lines[1].strip():
            return self.records_frame([])

        try:
            df = pd.read_csv(path, skiprows=1)
        except pd.errors.ParserError as exc:
            raise GraphFormatError(f"{path}: {exc}") from exc
        missing = [c for c in BenchRecord.columns() if c not in df.columns]
        if missing:
            raise GraphFormatError(f"{path}: row 2: missing columns {missing}")

        records = []
        for index, row in enumerate(df.to_dict('records')):
            try:
                error = row['error_2norm']
                records.append(BenchRecord(
                    graph_id=str(row['graph_id']), dataset=str(row['dataset']),
                    num_vertices=int(row['num_vertices']), method=str(row['method']),
                    t=float(row['t']), trotter_steps=int(row['trotter_steps']),
                    cx_count=int(row['cx_count']), depth=int(row['depth']),
                    error_2norm=None if pd.isna(error) else float(error),
                    seed=int(row['seed']), wall_time_ms=int(row['wall_time_ms']),
                    repeat=int(row['repeat']),
                ))
            except (TypeError, ValueError) as exc:
                # header comment is row 1, column names row 2
                raise GraphFormatError(f"{path}: row {index + 3}: {exc}") from exc
        return self.records_frame(records)

    # -- report --------------------------------------------------------------

    def cmd_report(self, csv_in, out_dir):
        """
        Plot data from a records CSV.

        Writes:
        - error_convergence.csv: x = N, y = mean error, yerr = std, per (dataset, method, t)
        - gate_counts.csv: x = num_vertices, y = mean CX, yerr = std, plus depth, per
          (dataset, method, t, N)

        Returns:
            dict: name -> written path
        """
        df = self.read_records(csv_in)
        out_dir = Path(out_dir)
        convergence_columns = ['dataset', 'method', 't', 'x', 'y', 'yerr', 'count']
        gate_columns = ['dataset', 'method', 't', 'trotter_steps', 'x', 'y', 'yerr',
                        'depth_mean', 'depth_std', 'count']

        if df.empty:
            logger.warning("%s holds no records; writing empty plot data", csv_in)
            convergence = pd.DataFrame(columns=convergence_columns)
            gates = pd.DataFrame(columns=gate_columns)
        else:
            summary = self.summarize(df)
            convergence = summary.dropna(subset=['error_2norm_mean']).rename(columns={
                'trotter_steps': 'x', 'error_2norm_mean': 'y', 'error_2norm_std': 'yerr',
            })[convergence_columns]
            gates = summary.rename(columns={
                'num_vertices': 'x', 'cx_count_mean': 'y', 'cx_count_std': 'yerr',
            })[gate_columns]

        outputs = {'error_convergence': out_dir / 'error_convergence.csv',
                   'gate_counts': out_dir / 'gate_counts.csv'}
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            convergence.to_csv(outputs['error_convergence'], index=False)
            gates.to_csv(outputs['gate_counts'], index=False)
        except OSError as exc:
            raise OSError(f"cannot write report to {out_dir}: {exc}") from exc

        if self.verbose:
            print(f"   ✅ {len(convergence):,} convergence points, {len(gates):,} gate-count points")
        return outputs


__all__ = ['METHODS', 'BenchRecord', 'BenchmarkRunner', 'evaluate_graph']
