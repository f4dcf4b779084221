"""
Quantum Walk Compiler - Command Line Interface

Main entry point for dataset generation, compilation, simulation and benchmarks.
Usage: python main.py <generate|decompose|compile|simulate|compare|report|commute> [options]
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from config.settings import DATASET_PRESETS, AVAILABLE_DATASETS, DEFAULT_CONFIG
from src import (
    BenchmarkRunner, CommutativityAnalyzer, DatasetGenerator, DatasetSpec, LabeledGraph,
    MatchingCompiler, MatchingDecomposer, PauliCompiler, TrotterPlan,
    GraphFormatError, NumericalGuardError, ResourceLimitError,
)
from src.benchmark import METHODS
from src.datasets import DATASET_KINDS
from src.matching import compressed_matchings_to_json
from src.optimizer import PeepholeOptimizer
from src.simulator import circuit_unitary, exact_evolution, spectral_norm_diff
from src.synthesis import lower_circuit
from src.circuit import cx_count, depth

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERICAL = 0, 1, 2, 3


class CLIParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ Error: {message}")
        sys.exit(EXIT_USAGE)


def build_parser():
    parser = CLIParser(
        description='Quantum Walk Circuit Compiler',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  python main.py generate --dataset connected-8 --out data/c8
  python main.py compile --graph data/c8/graph_0000.json --t 1.0 --steps 10 --out c.json
  python main.py compare --graphs data/c8 --t 0.1 --t 1.0 --steps 10 --steps 100 --out r.csv
  python main.py report --csv r.csv --out plots/
  python main.py commute --hypercube 4 --block 1
        '''
    )
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='Logging level (default: WARNING)')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('generate', help='Generate a graph dataset')
    _add_dataset_arguments(gen)
    gen.add_argument('--out', default=None, help='Output directory')
    gen.add_argument('--list', action='store_true', help='List dataset presets and exit')

    dec = sub.add_parser('decompose', help='Matching decomposition and compression of a graph')
    dec.add_argument('--graph', required=True, help='Graph file (.json or edge list)')
    dec.add_argument('--out', default=None, help='Write the compressed matchings as JSON')

    comp = sub.add_parser('compile', help='Compile one graph to a circuit')
    _add_graph_and_plan(comp)
    comp.add_argument('--method', choices=METHODS, default='matching')
    comp.add_argument('--lower', action='store_true',
                      help='Lower MCRX gates and run the peephole optimizer')
    comp.add_argument('--out', required=True,
                      help='Circuit JSON path (also writes <out>.meta.json and <out>.txt)')

    sim = sub.add_parser('simulate', help='Trotter error of one graph against exact evolution')
    _add_graph_and_plan(sim)
    sim.add_argument('--method', choices=METHODS, action='append', default=None)

    cmp_ = sub.add_parser('compare', help='Benchmark both methods over a dataset')
    cmp_.add_argument('--graphs', default=None, help='Directory written by generate')
    _add_dataset_arguments(cmp_)
    cmp_.add_argument('--t', type=float, action='append', default=None, help='Evolution time (repeatable)')
    cmp_.add_argument('--steps', type=int, action='append', default=None, help='Trotter steps (repeatable)')
    cmp_.add_argument('--method', choices=METHODS, action='append', default=None)
    cmp_.add_argument('--repeat', type=int, default=0, help='Shuffled matching scan orders (0 = deterministic)')
    cmp_.add_argument('--workers', type=int, default=1, help='Worker processes')
    cmp_.add_argument('--no-error', action='store_true', help='Skip dense error computation')
    cmp_.add_argument('--format', choices=['csv', 'json'], default='csv')
    cmp_.add_argument('--out', required=True, help='Records output file')

    rep = sub.add_parser('report', help='Plot data from a records CSV')
    rep.add_argument('--csv', required=True, help='Records CSV written by compare')
    rep.add_argument('--out', required=True, help='Output directory')

    com = sub.add_parser('commute', help='Matching vs Pauli commutativity report')
    com.add_argument('--graph', default=None, help='Graph file')
    com.add_argument('--hypercube', type=int, default=None, help='Relabeled hypercube Q_n')
    com.add_argument('--block', type=int, action='append', default=None,
                     help='Block position of the relabeling (repeatable, default: all)')
    com.add_argument('--out', default=None, help='Write the reports as JSON')
    return parser


def _add_dataset_arguments(parser):
    parser.add_argument('--dataset', default=None,
                        help=f'Preset ({", ".join(AVAILABLE_DATASETS[:3])}, ...) or kind {DATASET_KINDS}')
    parser.add_argument('--vertices', type=int, default=None, help='Number of vertices (power of two)')
    parser.add_argument('--prob', type=float, default=None, help='Erdos-Renyi edge probability')
    parser.add_argument('--count', type=int, default=None, help='Number of graphs')
    parser.add_argument('--seed', type=int, default=None, help='Dataset seed')


def _add_graph_and_plan(parser):
    parser.add_argument('--graph', required=True, help='Graph file (.json or edge list)')
    parser.add_argument('--t', type=float, action='append', default=None, help='Evolution time (repeatable)')
    parser.add_argument('--steps', type=int, action='append', default=None, help='Trotter steps (repeatable)')


def dataset_spec_from_args(args):
    """Build a DatasetSpec from a preset or kind plus explicit overrides."""
    if args.dataset is None:
        raise ValueError("--dataset is required (a preset name or a dataset kind)")
    if args.dataset in DATASET_PRESETS:
        params = dict(DATASET_PRESETS[args.dataset])
    elif args.dataset in DATASET_KINDS:
        params = {'kind': args.dataset}
    else:
        raise ValueError(f"unknown dataset {args.dataset!r}; see 'generate --list'")

    overrides = {'num_vertices': args.vertices, 'edge_probability': args.prob,
                 'count': args.count, 'seed': args.seed}
    params.update({k: v for k, v in overrides.items() if v is not None})
    params.setdefault('seed', DEFAULT_CONFIG['default_seed'])
    if 'num_vertices' not in params:
        raise ValueError("--vertices is required when --dataset names a kind")
    return DatasetSpec(**params)


def _compiler(method):
    return MatchingCompiler() if method == 'matching' else PauliCompiler()


def cmd_generate(args):
    if args.list:
        print("\n📋 Available Dataset Presets:")
        print("=" * 50)
        for i, name in enumerate(AVAILABLE_DATASETS, 1):
            print(f"  {i}. {name}")
        return EXIT_OK
    if not args.out:
        raise ValueError("generate needs --out")
    spec = dataset_spec_from_args(args)
    print(f"\n⚙️  Generating {spec.count:,} graphs for {spec.name} (seed {spec.seed})")
    BenchmarkRunner().cmd_generate(spec, args.out)
    return EXIT_OK


def cmd_decompose(args):
    print(f"📂 Loading graph: {args.graph}")
    graph = LabeledGraph.load(args.graph)
    print(f"   ✅ {graph.num_vertices:,} vertices, {graph.num_edges:,} edges")

    decomposed = MatchingDecomposer().decompose(graph)
    print(f"\n🔍 {len(decomposed)} matchings")
    for index, (matching, compressed) in enumerate(decomposed):
        print(f"   M{index}: {len(matching)} edges -> {len(compressed)} compressed")
        for edge in compressed:
            print(f"      ({edge.u_prime}, {edge.v_prime}) active={list(edge.active)} "
                  f"weight_reducing={list(edge.weight_reducing)} mask={edge.mask}")

    if args.out:
        payload = compressed_matchings_to_json([c for _, c in decomposed])
        Path(args.out).write_text(json.dumps(payload, indent=2))
        print(f"\n💾 Compressed matchings saved to: {args.out}")
    return EXIT_OK


def cmd_compile(args):
    if len(args.t or ()) > 1 or len(args.steps or ()) > 1:
        raise ValueError("compile takes a single --t and a single --steps")
    graph = LabeledGraph.load(args.graph)
    t = (args.t or [1.0])[0]
    steps = (args.steps or [1])[0]
    plan = TrotterPlan(t, steps)
    compiler = _compiler(args.method)

    print(f"⚙️  Compiling {args.graph} with the {args.method} method (t={t}, N={steps})")
    circuit = compiler.compile(graph, plan)
    if args.lower:
        circuit = PeepholeOptimizer().optimize(lower_circuit(circuit))
        print(f"   CX count: {cx_count(circuit):,}   depth: {depth(circuit):,}")
    print(f"   ✅ {len(circuit):,} gates")

    out = Path(args.out)
    out.write_text(circuit.to_json())
    meta_path = out.with_name(out.name + '.meta.json')
    meta_path.write_text(json.dumps(compiler.metadata(graph, plan), indent=2))
    out.with_name(out.name + '.txt').write_text(circuit.to_text())
    print(f"\n💾 Circuit saved to: {out}")
    return EXIT_OK


def cmd_simulate(args):
    graph = LabeledGraph.load(args.graph)
    times = args.t or DEFAULT_CONFIG['default_times']
    steps_list = args.steps or [1]
    methods = args.method or list(METHODS)

    print(f"📊 Trotter error for {args.graph} ({graph.num_edges} edges)\n")
    for t in times:
        exact = exact_evolution(graph.adjacency_matrix(), t)
        for steps in steps_list:
            for method in methods:
                step = _compiler(method).compile(graph, TrotterPlan(t / steps, 1))
                error = spectral_norm_diff(exact, circuit_unitary(step.repeat(steps)))
                print(f"   t={t:<5g} N={steps:<4d} {method:<9s} error={error:.3e}")
    return EXIT_OK


def _load_entries(args):
    if args.graphs:
        print(f"📂 Loading dataset: {args.graphs}")
        return BenchmarkRunner.load_graphs(args.graphs)
    spec = dataset_spec_from_args(args)
    print(f"⚙️  Generating {spec.name} in memory")
    seeds, graphs = DatasetGenerator().generate(spec)
    return [(f"graph_{i:04d}", spec.name, seed, g) for i, (seed, g) in enumerate(zip(seeds, graphs))]


def cmd_compare(args):
    entries = _load_entries(args)
    print(f"   ✅ Loaded {len(entries):,} graphs")

    runner = BenchmarkRunner(verbose=True)
    records = runner.cmd_compare(
        entries,
        times=args.t or DEFAULT_CONFIG['default_times'],
        steps_list=args.steps or DEFAULT_CONFIG['default_steps'],
        methods=tuple(args.method or METHODS),
        compute_error=not args.no_error,
        repeat=args.repeat,
        workers=args.workers,
    )
    runner.write_records(records, args.out, args.format)

    summary = runner.summarize(records)
    print(f"\n📊 Results Summary:")
    print(f"   Records: {len(records):,}   Cells: {len(summary):,}")
    for method, group in summary.groupby('method'):
        print(f"   {method:<9s} mean CX {group['cx_count_mean'].mean():,.1f}   "
              f"mean depth {group['depth_mean'].mean():,.1f}")
    print(f"\n💾 Results saved to: {args.out}")
    return EXIT_OK


def cmd_report(args):
    print(f"📂 Loading records: {args.csv}")
    outputs = BenchmarkRunner(verbose=True).cmd_report(args.csv, args.out)
    for name, path in outputs.items():
        print(f"💾 {name}: {path}")
    return EXIT_OK


def cmd_commute(args):
    analyzer = CommutativityAnalyzer()
    reports = []
    if args.graph:
        graph = LabeledGraph.load(args.graph)
        reports.append(analyzer.report(graph, Path(args.graph).stem))
    elif args.hypercube is not None:
        n = args.hypercube
        if n < 3:
            raise ValueError(f"--hypercube needs n >= 3 for a relabeled block, got {n}")
        blocks = args.block if args.block is not None else range(n - 2)
        for i in blocks:
            cube, perm, relabeled = analyzer.relabeled_hypercube(n, i)
            reports.append(analyzer.report(relabeled, f"Q{n}-block{i}", source=cube, perm=perm))
    else:
        raise ValueError("commute needs --graph or --hypercube")

    for report in reports:
        matching = '✅' if report['commuting_matching_found'] else '❌'
        pauli = '⚠️ ' if report['pauli_noncommuting'] else '✅'
        print(f"   {report['graph_id']}: commuting matchings {matching}  "
              f"non-commuting Pauli terms {pauli} {report['witness_terms']}")
    if args.out:
        Path(args.out).write_text(json.dumps(reports, indent=2))
        print(f"\n💾 Reports saved to: {args.out}")
    return EXIT_OK


COMMANDS = {
    'generate': cmd_generate,
    'decompose': cmd_decompose,
    'compile': cmd_compile,
    'simulate': cmd_simulate,
    'compare': cmd_compare,
    'report': cmd_report,
    'commute': cmd_commute,
}


def main(argv=None):
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format='%(levelname)s %(name)s: %(message)s')

    print(f"\n{'='*80}")
    print("QUANTUM WALK CIRCUIT COMPILER")
    print(f"{'='*80}\n")

    try:
        return COMMANDS[args.command](args)
    except (GraphFormatError, OSError) as e:
        print(f"❌ Error: {e}")
        return EXIT_IO
    except (NumericalGuardError, ResourceLimitError) as e:
        print(f"❌ Error: {e}")
        return EXIT_NUMERICAL
    except ValueError as e:
        print(f"❌ Error: {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
