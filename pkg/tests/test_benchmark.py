"""
Unit Tests for the Benchmark Harness and Command Line

Tests dataset files, record collection, CSV round trips, reports and exit codes.
"""

import contextlib
import io
import tempfile
import unittest
from dataclasses import replace
from pathlib import Path

import pandas as pd

from main import main
from src.benchmark import BenchmarkRunner, BenchRecord, evaluate_graph
from src.circuit import GateCircuit
from src.datasets import DatasetGenerator, DatasetSpec
from src.errors import GraphFormatError
from src.graph import LabeledGraph

SINGLE_EDGE = LabeledGraph.from_edges(1, [(0, 1)])


def record(cx, depth=3, error=None, graph_id='g', steps=10, method='matching'):
    return BenchRecord(graph_id=graph_id, dataset='connected-path-8', num_vertices=8, method=method,
                       t=1.0, trotter_steps=steps, cx_count=cx, depth=depth, error_2norm=error)


def run_cli(*argv):
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return main(list(argv))


class TestDatasetFiles(unittest.TestCase):
    """Test cases for generate and load_graphs."""

    def setUp(self):
        """Create a scratch directory and a quiet runner."""
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)
        self.runner = BenchmarkRunner(verbose=False)
        self.spec = DatasetSpec('connected-path', 8, seed=9, count=5)

    def tearDown(self):
        self.tmp.cleanup()

    def test_generate_is_byte_identical(self):
        """Test the same DatasetSpec writes identical files."""
        self.runner.cmd_generate(self.spec, self.root / 'a')
        self.runner.cmd_generate(self.spec, self.root / 'b')
        names = sorted(p.name for p in (self.root / 'a').iterdir())
        self.assertIn('manifest.json', names)
        self.assertEqual(len(names), 6)
        for name in names:
            self.assertEqual((self.root / 'a' / name).read_bytes(), (self.root / 'b' / name).read_bytes())

    def test_load_graphs(self):
        """Test generated graphs load back in manifest order."""
        paths = self.runner.cmd_generate(self.spec, self.root / 'data')
        entries = BenchmarkRunner.load_graphs(self.root / 'data')
        self.assertEqual([e[0] for e in entries], [p.stem for p in paths])
        self.assertEqual(entries[0][1], 'connected-path-8')
        for (_, _, _, graph), path in zip(entries, paths):
            self.assertEqual(graph, LabeledGraph.load(path))

    def test_missing_manifest(self):
        """Test a directory without a manifest is an I/O error."""
        with self.assertRaises(OSError):
            BenchmarkRunner.load_graphs(self.root)


class TestCompare(unittest.TestCase):
    """Test cases for evaluate_graph and cmd_compare."""

    def setUp(self):
        """Initialize a quiet runner."""
        self.runner = BenchmarkRunner(verbose=False)
        self.entries = [('g0', 'single-edge', 0, SINGLE_EDGE)]

    def test_single_edge_is_exact(self):
        """Test both methods evolve one edge exactly with no CX gates."""
        records = self.runner.cmd_compare(self.entries, [0.5], [1, 3])
        self.assertEqual(len(records), 4)
        for item in records:
            self.assertLess(item.error_2norm, 1e-12)
            self.assertEqual(item.cx_count, 0)
        self.assertEqual(records, sorted(records, key=BenchRecord.sort_key))

    def test_error_skipped(self):
        """Test compute_error=False leaves the error empty."""
        result = evaluate_graph(SINGLE_EDGE, 'pauli', 1.0, 2, compute_error=False)
        self.assertIsNone(result['error_2norm'])

    def test_unknown_method(self):
        """Test unknown methods are rejected."""
        with self.assertRaises(ValueError):
            self.runner.cmd_compare(self.entries, [1.0], [1], methods=('qaoa',))
        with self.assertRaises(ValueError):
            evaluate_graph(SINGLE_EDGE, 'qaoa', 1.0, 1)

    def test_repeat_scan_orders(self):
        """Test repeats only multiply the matching records."""
        records = self.runner.cmd_compare(self.entries, [1.0], [2], repeat=3)
        methods = [r.method for r in records]
        self.assertEqual(methods.count('matching'), 3)
        self.assertEqual(methods.count('pauli'), 1)
        self.assertEqual(sorted(r.repeat for r in records if r.method == 'matching'), [1, 2, 3])

    def test_negative_repeat(self):
        """Test repeat must be non-negative."""
        with self.assertRaises(ValueError):
            self.runner.cmd_compare(self.entries, [1.0], [1], repeat=-1)

    def test_workers_match_serial_run(self):
        """Test a worker pool produces the same records as a serial run."""
        seeds, graphs = DatasetGenerator().generate(DatasetSpec('connected-path', 8, seed=5, count=4))
        entries = [(f'g{i}', 'connected-path-8', seed, graph) for i, (seed, graph) in enumerate(zip(seeds, graphs))]
        serial = self.runner.cmd_compare(entries, [0.5], [1, 2], repeat=2, workers=1)
        pooled = self.runner.cmd_compare(entries, [0.5], [1, 2], repeat=2, workers=2)
        self.assertEqual([replace(r, wall_time_ms=0) for r in serial],
                         [replace(r, wall_time_ms=0) for r in pooled])

    def test_matching_beats_pauli_on_cycle(self):
        """Test the commuting 4-cycle costs fewer CX gates with matchings."""
        cycle = LabeledGraph.from_edges(2, [(0, 1), (2, 3), (0, 3), (1, 2)])
        matching = evaluate_graph(cycle, 'matching', 1.0, 5)
        pauli = evaluate_graph(cycle, 'pauli', 1.0, 5)
        self.assertLess(matching['error_2norm'], 1e-12)
        self.assertLessEqual(matching['cx_count'], pauli['cx_count'])


class TestRecordTables(unittest.TestCase):
    """Test cases for summaries, CSV files and reports."""

    def setUp(self):
        """Create a scratch directory and a quiet runner."""
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)
        self.runner = BenchmarkRunner(verbose=False)

    def tearDown(self):
        self.tmp.cleanup()

    def test_summary_statistics(self):
        """Test population std and CV per cell."""
        summary = self.runner.summarize([record(2, graph_id='a'), record(4, graph_id='b')])
        self.assertEqual(len(summary), 1)
        row = summary.iloc[0]
        self.assertEqual(row['count'], 2)
        self.assertAlmostEqual(row['cx_count_mean'], 3.0)
        self.assertAlmostEqual(row['cx_count_std'], 1.0)
        self.assertAlmostEqual(row['cx_count_cv'], 1.0 / 3.0)

    def test_zero_mean_has_no_cv(self):
        """Test CV is undefined when the mean is zero."""
        summary = self.runner.summarize([record(0), record(0, graph_id='h')])
        self.assertTrue(pd.isna(summary.iloc[0]['cx_count_cv']))

    def test_csv_roundtrip(self):
        """Test written records read back with the schema header."""
        records = [record(2, error=0.01), record(5, graph_id='h', method='pauli')]
        path = self.runner.write_records(records, self.root / 'r.csv')
        self.assertEqual(path.read_text().splitlines()[0], '# schema_version=1')
        df = self.runner.read_records(path)
        self.assertEqual(list(df['graph_id']), ['g', 'h'])
        self.assertEqual(list(df['cx_count']), [2, 5])
        self.assertAlmostEqual(df['error_2norm'].iloc[0], 0.01)
        self.assertTrue(pd.isna(df['error_2norm'].iloc[1]))

    def test_bad_row_number(self):
        """Test a malformed row is reported by its file row."""
        path = self.runner.write_records([record(2), record(3, graph_id='h')], self.root / 'r.csv')
        lines = path.read_text().splitlines()
        lines[3] = lines[3].replace(',3,', ',three,', 1)
        path.write_text('\n'.join(lines) + '\n')
        with self.assertRaisesRegex(GraphFormatError, 'row 4'):
            self.runner.read_records(path)

    def test_wrong_schema(self):
        """Test a missing or stale schema header is refused."""
        path = self.root / 'r.csv'
        path.write_text('# schema_version=0\ngraph_id\n')
        with self.assertRaisesRegex(GraphFormatError, 'row 1'):
            self.runner.read_records(path)

    def test_unknown_format(self):
        """Test only csv and json outputs exist."""
        with self.assertRaises(ValueError):
            self.runner.write_records([record(1)], self.root / 'r.xml', fmt='xml')

    def test_report(self):
        """Test plot data from real records."""
        entries = [('g0', 'single-edge', 0, SINGLE_EDGE)]
        records = self.runner.cmd_compare(entries, [0.5], [1, 2])
        csv_path = self.runner.write_records(records, self.root / 'r.csv')
        outputs = self.runner.cmd_report(csv_path, self.root / 'plots')
        convergence = pd.read_csv(outputs['error_convergence'])
        self.assertEqual(sorted(convergence['x'].unique()), [1, 2])
        gates = pd.read_csv(outputs['gate_counts'])
        self.assertEqual(set(gates['x']), {2})
        self.assertIn('depth_mean', gates.columns)

    def test_empty_report(self):
        """Test a header-only CSV warns and writes empty plot data."""
        path = self.runner.write_records([], self.root / 'r.csv')
        with self.assertLogs('src.benchmark', level='WARNING'):
            outputs = self.runner.cmd_report(path, self.root / 'plots')
        self.assertEqual(len(pd.read_csv(outputs['gate_counts'])), 0)
        self.assertEqual(len(pd.read_csv(outputs['error_convergence'])), 0)


class TestCommandLine(unittest.TestCase):
    """Test cases for main() exit codes."""

    def setUp(self):
        """Create a scratch directory."""
        self.tmp = tempfile.TemporaryDirectory()
        self.root = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_generate_and_compare(self):
        """Test the generate -> compare -> report pipeline succeeds."""
        data, out = self.root / 'data', self.root / 'r.csv'
        self.assertEqual(run_cli('generate', '--dataset', 'connected-path', '--vertices', '4',
                                 '--count', '2', '--out', str(data)), 0)
        self.assertEqual(run_cli('compare', '--graphs', str(data), '--t', '0.5', '--steps', '2',
                                 '--out', str(out)), 0)
        self.assertEqual(run_cli('report', '--csv', str(out), '--out', str(self.root / 'plots')), 0)
        self.assertTrue((self.root / 'plots' / 'gate_counts.csv').exists())

    def test_compile_writes_metadata(self):
        """Test compile writes the circuit and its sidecar."""
        graph = SINGLE_EDGE.save(self.root / 'g.json')
        out = self.root / 'c.json'
        self.assertEqual(run_cli('compile', '--graph', str(graph), '--method', 'pauli',
                                 '--lower', '--out', str(out)), 0)
        self.assertTrue((self.root / 'c.json.meta.json').exists())

    def test_compile_writes_text_dump(self):
        """Test compile writes one readable line per gate next to the JSON."""
        graph = LabeledGraph.from_edges(2, [(0, 1), (2, 3), (0, 3), (1, 2)]).save(self.root / 'c4.json')
        out = self.root / 'c.json'
        self.assertEqual(run_cli('compile', '--graph', str(graph), '--method', 'matching',
                                 '--lower', '--out', str(out)), 0)
        circuit = GateCircuit.from_json(out.read_text())
        lines = (self.root / 'c.json.txt').read_text().splitlines()
        self.assertEqual(len(lines), len(circuit))
        self.assertEqual(lines, [str(g) for g in circuit])

    def test_compile_single_plan(self):
        """Test compile refuses repeated --t or --steps."""
        graph = SINGLE_EDGE.save(self.root / 'g.json')
        out = str(self.root / 'c.json')
        self.assertEqual(run_cli('compile', '--graph', str(graph), '--t', '0.1', '--t', '0.2',
                                 '--out', out), 1)
        self.assertEqual(run_cli('compile', '--graph', str(graph), '--steps', '1', '--steps', '2',
                                 '--out', out), 1)
        self.assertFalse((self.root / 'c.json').exists())

    def test_commute_hypercube(self):
        """Test the relabeled hypercube report."""
        out = self.root / 'w.json'
        self.assertEqual(run_cli('commute', '--hypercube', '3', '--out', str(out)), 0)
        self.assertIn('IYY', out.read_text())

    def test_small_hypercube_rejected(self):
        """Test hypercubes too small for a relabeled block exit with code 1."""
        self.assertEqual(run_cli('commute', '--hypercube', '2'), 1)
        self.assertEqual(run_cli('commute', '--hypercube', '1'), 1)

    def test_usage_error(self):
        """Test bad arguments exit with code 1."""
        self.assertEqual(run_cli('generate', '--dataset', 'nope', '--out', str(self.root)), 1)
        with self.assertRaises(SystemExit) as ctx:
            run_cli('compare')
        self.assertEqual(ctx.exception.code, 1)

    def test_missing_file(self):
        """Test unreadable input exits with code 2."""
        self.assertEqual(run_cli('decompose', '--graph', str(self.root / 'missing.json')), 2)

    def test_malformed_graph(self):
        """Test unparsable graph files exit with code 2."""
        path = self.root / 'bad.json'
        path.write_text('{"edges": 3')
        self.assertEqual(run_cli('decompose', '--graph', str(path)), 2)

    def test_invalid_graph_records(self):
        """Test well-formed files describing invalid graphs exit with code 2."""
        cases = {
            'loop.json': '{"num_qubits": 2, "edges": [[1, 1]]}',
            'range.json': '{"num_qubits": 1, "edges": [[0, 5]]}',
            'width.json': '{"num_qubits": "two", "edges": []}',
            'header.txt': '#qubits abc\n0 1\n',
            'loop.txt': '#qubits 2\n3 3\n',
            'empty.txt': '#qubits 0\n',
        }
        for name, text in cases.items():
            path = self.root / name
            path.write_text(text)
            with self.subTest(name=name):
                self.assertEqual(run_cli('decompose', '--graph', str(path)), 2)

    def test_resource_limit(self):
        """Test oversized witness searches exit with code 3."""
        self.assertEqual(run_cli('commute', '--hypercube', '7', '--block', '0'), 3)


if __name__ == '__main__':
    unittest.main()
