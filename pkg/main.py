import argparse
import json
import logging
import os
import sys
import time
from typing import *

from algebra import parse_poly, parse_point, format_poly, format_point
from elliptic import load_curve, write_curve
from experiment import Experiment, Session, Parameterizer, Pipeline, scan
from graphing import Grapher
from quotient import build_quotient, write_dot
from symbols import measure_table, oracle_mismatches
from utils import save_pandas_table, write_json, compact_dict_print
from utils.config import DEFAULT_PRECISION, DEFAULT_HECKE_DEGREE, DEFAULT_MEASURE_DEPTH, effective_config, results_dir

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    t = time.time_ns()
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    print('STARTING...')
    try:
        code = args.command(args)
    except Exception as e:
        logging.getLogger(__name__).debug('Run failed', exc_info=True)
        print(f'ERROR: {type(e).__name__}: {e}', file=sys.stderr)
        code = EXIT_ERROR
    print(f'FINISHED IN {(time.time_ns() - t) * 1e-9} SECONDS.')
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Verify the exceptional-zero identity for curves over F_q(T).')
    parser.add_argument('--verbose', '-v', action='store_true', help='log pipeline stages')
    sub = parser.add_subparsers(dest='name', required=True)

    p = sub.add_parser('verify', help='run every check on one or more fixture curves')
    p.add_argument('--curve', action='append', required=True, help='fixture path or name; repeat for a session')
    p.add_argument('--prec', type=int, default=DEFAULT_PRECISION, help='local precision N')
    p.add_argument('--level', type=int, default=None, help='ball level L')
    p.add_argument('--hecke-degree', type=int, default=DEFAULT_HECKE_DEGREE)
    p.add_argument('--raw', action='store_true', help='also evaluate I_psi by its defining double integral')
    p.add_argument('--flip-sign', action='store_true', help='use -c in place of the newform c')
    p.add_argument('--no-save', action='store_true')
    p.add_argument('--progress', action='store_true')
    p.set_defaults(command=verify_command)

    p = sub.add_parser('sweep', help='verify one curve over several ball levels and precisions')
    p.add_argument('--curve', required=True)
    p.add_argument('--levels', type=_int_list, required=True, help='comma separated ball levels')
    p.add_argument('--precs', type=_int_list, default=[DEFAULT_PRECISION], help='comma separated precisions')
    p.add_argument('--show-graphs', action='store_true')
    p.set_defaults(command=sweep_command)

    p = sub.add_parser('scan', help='search for fixture curves')
    p.add_argument('--qmax', type=int, required=True, help='scan every prime q up to this bound')
    p.add_argument('--coeff-degree', type=int, default=1)
    p.add_argument('--p-degree', type=int, default=1)
    p.add_argument('--level-degree', type=int, default=4)
    p.add_argument('--limit', type=int, default=None)
    p.add_argument('--out', default=None, help='directory to write the candidate fixtures to')
    p.set_defaults(command=scan_command)

    p = sub.add_parser('newform', help='print the newform and its eigenvalue table')
    p.add_argument('--curve', required=True)
    p.add_argument('--hecke-degree', type=int, default=DEFAULT_HECKE_DEGREE)
    p.set_defaults(command=newform_command)

    p = sub.add_parser('graph', help='export the quotient graph at a level as DOT')
    p.add_argument('--level', required=True, help='level polynomial, e.g. "T^3 + T"')
    p.add_argument('--q', type=int, required=True)
    p.add_argument('--depth', type=int, default=None)
    p.add_argument('--out', required=True)
    p.set_defaults(command=graph_command)

    p = sub.add_parser('symbol', help='evaluate the modular symbol [r, inf] of the newform')
    p.add_argument('--r', required=True, help='rational function, e.g. "1/(T^2 + 1)"')
    p.add_argument('--curve', required=True)
    p.set_defaults(command=symbol_command)

    p = sub.add_parser('measure', help='tabulate the boundary measures of the newform')
    p.add_argument('--curve', required=True)
    p.add_argument('--depth', type=int, default=DEFAULT_MEASURE_DEPTH)
    p.add_argument('--show-graphs', action='store_true')
    p.set_defaults(command=measure_command)
    return parser


def _int_list(text: str) -> List[int]:
    return [int(s) for s in text.split(',') if s.strip()]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


# COMMANDS

def verify_command(args) -> int:
    save = not args.no_save

    def define(fixture: str) -> Experiment:
        experiment = Experiment().add_fixture(fixture).set_ball_level(args.level).set_precision(args.prec) \
            .set_hecke_degree(args.hecke_degree).show_progress(args.progress).add_all_checks()
        if args.raw:
            experiment.add_raw_period_check()
        if args.flip_sign:
            experiment.flip_sign()
        return experiment

    if len(args.curve) == 1:
        experiment = define(args.curve[0])
        table = experiment.run(save_data=save)
        print(table)
        report = experiment.report()
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
        return EXIT_PASSED if report.passed else EXIT_FAILED
    session = Session(define, args.curve, name=compact_dict_print({'curves': len(args.curve), 'N': args.prec}))
    results = session.run(save_data=save, quiet=not args.progress)
    print(results)
    if save:
        save_results(args, session.directory)
    return EXIT_PASSED if bool(results['passed'].all()) else EXIT_FAILED


def sweep_command(args) -> int:
    params = [{'L': L, 'N': N} for L in args.levels for N in args.precs]
    curve = load_curve(args.curve)

    def define(param: Dict[str, int]) -> Experiment:
        return Experiment(name=f'{curve.name}_sweep').add_curve(curve).set_ball_level(param['L']) \
            .set_precision(param['N']).add_identity_check().add_period_check().add_valuation_check()

    sweep = Parameterizer(define, params, name=curve.name)
    results = sweep.run(save_data=True, save_graphs=True, show_graphs=args.show_graphs)
    print(results)
    return EXIT_PASSED if bool(results['passed'].all() and results['consistent'].all()) else EXIT_FAILED


def scan_command(args) -> int:
    found = []
    for q in (n for n in range(2, args.qmax + 1) if _is_prime(n)):
        found += scan(q, args.coeff_degree, args.p_degree, args.level_degree, args.limit, progress=True)
    for curve in found:
        print(f'{curve}  p = {format_poly(curve.p.pi)}')
        if args.out:
            write_curve(curve, os.path.join(args.out, f'{curve.name}.curve'))
    print(f'{len(found)} candidates')
    return EXIT_PASSED


def newform_command(args) -> int:
    pipe = Pipeline(load_curve(args.curve), hecke_degree=args.hecke_degree)
    print(f'{pipe.graph}, cuspidal dimension {len(pipe.basis)}')
    for Q, a in pipe.eigenvalues.items():
        print(f'a_({format_poly(Q.pi)}) = {a}')
    print(json.dumps(pipe.newform.to_json(), indent=2))
    return EXIT_PASSED


def graph_command(args) -> int:
    graph = build_quotient(parse_poly(args.level, args.q), args.depth)
    print(graph)
    write_dot(graph, args.out)
    return EXIT_PASSED


def symbol_command(args) -> int:
    pipe = Pipeline(load_curve(args.curve))
    r = parse_point(args.r, pipe.curve.q)
    print(f'[{format_point(r)}, inf] c = {pipe.ctx.symbols.symbol(r)}')
    return EXIT_PASSED


def measure_command(args) -> int:
    pipe = Pipeline(load_curve(args.curve))
    table = measure_table(pipe.ctx, args.depth, progress=True)
    print(table.to_string(index=False))
    directory = os.path.join(results_dir(), pipe.curve.name or 'curve', 'measures')
    os.makedirs(directory, exist_ok=True)
    save_pandas_table(os.path.join(directory, f'depth_{args.depth}'), table)
    grapher = Grapher(directory, args.show_graphs, True)
    grapher.measure_levels('/teitelbaum', table)
    grapher.measure_agreement('/oracle', table)
    return EXIT_PASSED if oracle_mismatches(table).empty else EXIT_FAILED


def save_results(args, directory: str):
    config = effective_config(precision=args.prec, ball_level=args.level, hecke_degree=args.hecke_degree)
    config['curves'] = args.curve
    write_json(os.path.join(directory, 'config.json'), config)


if __name__ == '__main__':
    sys.exit(main())
