#!/usr/bin/env python3
"""
Noncommutative Gröbner bases and universal envelopes - Main Entry Point

Usage:
    python main.py groebner FILE [--max-degree D] [--max-iter K] [--snapshots] [--json PATH]
    python main.py nf FILE --poly EXPR [--raw] [--trace]
    python main.py envelope (--preset KEY | --sc FILE) [--op KEY]
    python main.py dims (FILE | --preset KEY | --sc FILE) --to N [--csv PATH]
    python main.py multable (FILE | --preset KEY | --sc FILE) [--json PATH]

Exit codes: 0 success, 1 usage or input error, 2 completion stopped at a
bound (results are still printed), 3 infinite quotient where a finite one
was required.
"""

import os
import sys
import logging
import argparse
import time

# Check for --quiet flag early to suppress non-error logging
if '--quiet' in sys.argv:
    logging.getLogger().setLevel(logging.ERROR)
    os.environ['QUIET_MODE'] = '1'

from dotenv import load_dotenv

from catalog import OPERATIONS, builtin_operation, builtin_system
from config import completion_config, configure_logging, dims_window_default, log_dir
from envelope import envelope_presentation
from error_logger import get_error_logger
from errors import (CatalogError, EnvelopeError, IncompleteBasisError, InfiniteQuotientError,
                    ParseError, StructureConstantsError, WordError)
from groebner import Presentation, complete
from poly import standard_form
from presentation_file import load_presentation, load_structure_constants, parse_polynomial
from quotient import dims_for_result, multiplication_table
from reduce import normal_form
from reports import RunReport, format_quotient, quotient_summary

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BOUND = 2
EXIT_INFINITE = 3


def setup_parser():
    """Set up command line argument parser"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--quiet', action='store_true',
                        help='Suppress all logging output except errors')
    common.add_argument('--log-file', type=str,
                        help='Also write the run log to this file')
    common.add_argument('--json', type=str, metavar='PATH',
                        help='Write a JSON run report to PATH')

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument('--max-degree', type=int,
                        help='Skip compositions of overlaps longer than D (default: 20 when no bound is given)')
    bounds.add_argument('--max-iter', type=int,
                        help='Stop after K iterations (default: 50 when no bound is given)')
    bounds.add_argument('--max-size', type=int,
                        help='Stop when the basis would exceed N generators')
    bounds.add_argument('--workers', type=int,
                        help='Worker processes for composition normal forms (default: 1)')
    bounds.add_argument('--snapshots', action='store_true',
                        help='Keep the generating set after every iteration')

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument('file', nargs='?', help='Presentation file')
    source.add_argument('--preset', type=str,
                        help='Builtin system: sl2, s2, m2-units, a(p,q) or block(d1,...,dk)')
    source.add_argument('--sc', type=str, metavar='FILE',
                        help='Structure-constants file')
    source.add_argument('--op', type=str,
                        help=f"Operation for --preset/--sc, one of: {', '.join(OPERATIONS)}")

    parser = argparse.ArgumentParser(description='Noncommutative Gröbner bases and universal associative envelopes')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('groebner', parents=[common, bounds], help='Complete a presentation file')
    p.add_argument('file', help='Presentation file')
    p.add_argument('--text', action='store_true', help='List the basis as g1 = ..., g2 = ...')

    p = sub.add_parser('nf', parents=[common, bounds], help='Normal form of a polynomial')
    p.add_argument('file', help='Presentation file')
    p.add_argument('--poly', type=str, required=True, help='Polynomial expression')
    p.add_argument('--raw', action='store_true',
                   help='Reduce against the file generators as given instead of the completed basis')
    p.add_argument('--trace', action='store_true', help='Print every reduction step')

    p = sub.add_parser('envelope', parents=[common, bounds, source],
                       help='Build an envelope presentation, complete it and describe the quotient')
    p.add_argument('--window', type=int, help='Top degree for graded dimensions of an infinite quotient')
    p.add_argument('--text', action='store_true', help='List the basis as g1 = ..., g2 = ...')

    p = sub.add_parser('dims', parents=[common, bounds, source], help='Graded dimensions of the quotient')
    p.add_argument('--to', type=int, required=True, help='Highest degree')
    p.add_argument('--csv', type=str, metavar='PATH', help='Write degree,dim rows to PATH')

    sub.add_parser('multable', parents=[common, bounds, source],
                   help='Multiplication table of a finite quotient')

    return parser


def resolve_presentation(args) -> Presentation:
    """Presentation from a file, a builtin system or a structure-constants file."""
    chosen = [x for x in (args.file, args.preset, args.sc) if x]
    if len(chosen) != 1:
        raise CatalogError("give exactly one of FILE, --preset KEY or --sc FILE")
    if args.file:
        if args.op:
            raise CatalogError("--op applies to --preset and --sc only")
        return load_presentation(args.file)
    if args.preset:
        system, op = builtin_system(args.preset, args.op)
    else:
        system = load_structure_constants(args.sc)
        if args.op:
            op = builtin_operation(args.op)
        elif system.arity == 2:
            op = builtin_operation('jordan-product' if system.is_symmetric_under([(1, 0)]) else 'lie-bracket')
        else:
            raise CatalogError(f"--op is required for {system.arity}-ary structure constants")
    presentation = envelope_presentation(system, op)
    logging.info(f"{presentation.label}: {len(presentation.generators)} generators")
    return presentation


def describe_source(args) -> str:
    return getattr(args, 'file', None) or getattr(args, 'preset', None) or getattr(args, 'sc', None) or '-'


def build_config(args):
    return completion_config(
        max_degree=args.max_degree,
        max_iterations=args.max_iter,
        max_basis_size=args.max_size,
        snapshots=args.snapshots,
        workers=args.workers,
    )


def run_completion(args, presentation: Presentation, report: RunReport):
    cfg = build_config(args)
    report.config = cfg
    started = time.perf_counter()
    result = complete(presentation, cfg)
    report.timings['complete'] = time.perf_counter() - started
    report.result = result
    if result.hit_bound:
        get_error_logger().log_bound_hit(describe_source(args), result.status_text(),
                                         len(result.basis), len(result.iterations))
    return result


def print_basis(result, listing: bool):
    if listing:
        print(result.to_text())
        return
    for g in result.basis:
        print(g)
    print(f"status: {result.status_text()}")


def cmd_groebner(args, report: RunReport) -> int:
    presentation = load_presentation(args.file)
    result = run_completion(args, presentation, report)
    print_basis(result, args.text)
    if args.snapshots:
        for n, snapshot in enumerate(result.snapshots, start=1):
            print(f"G{n}: " + ", ".join(str(g) for g in snapshot))
    return EXIT_BOUND if result.hit_bound else EXIT_OK


def cmd_nf(args, report: RunReport) -> int:
    presentation = load_presentation(args.file)
    f = parse_polynomial(args.poly, presentation.alphabet)
    code = EXIT_OK
    if args.raw:
        generators = [standard_form(g) for g in presentation.generators if g]
    else:
        result = run_completion(args, presentation, report)
        generators = result.basis
        code = EXIT_BOUND if result.hit_bound else EXIT_OK
    h, trace = normal_form(f, generators)
    if args.trace:
        print(trace.to_text())
        report.extra['trace'] = trace.to_dict()
    else:
        print(h)
    report.extra['nf'] = {'input': f.to_text(), 'output': h.to_text(), 'raw': args.raw}
    return code


def cmd_envelope(args, report: RunReport) -> int:
    presentation = resolve_presentation(args)
    result = run_completion(args, presentation, report)
    print(f"{presentation.label}: {len(presentation.generators)} generators")
    print_basis(result, args.text)
    window = args.window or dims_window_default()
    report.quotient = quotient_summary(result, window)
    print(format_quotient(report.quotient))
    return EXIT_BOUND if result.hit_bound else EXIT_OK


def cmd_dims(args, report: RunReport) -> int:
    presentation = resolve_presentation(args)
    result = run_completion(args, presentation, report)
    dims = dims_for_result(result, args.to)
    print(",".join(str(d) for d in dims.dims))
    if dims.guaranteed_upto is not None:
        logging.warning(f"Basis is {result.status_text()}; dimensions exact up to degree {dims.guaranteed_upto}")
    if args.csv:
        dims.write_csv(args.csv)
        logging.info(f"Dimensions written to {args.csv}")
    report.extra['dims'] = dims.to_dict()
    return EXIT_BOUND if result.hit_bound else EXIT_OK


def cmd_multable(args, report: RunReport) -> int:
    presentation = resolve_presentation(args)
    result = run_completion(args, presentation, report)
    if not result.is_complete and result.hit_bound:
        print_basis(result, False)
    table = multiplication_table(result)
    print(table.to_text())
    report.extra['table'] = table.to_dict()
    return EXIT_OK


COMMANDS = {
    'groebner': cmd_groebner,
    'nf': cmd_nf,
    'envelope': cmd_envelope,
    'dims': cmd_dims,
    'multable': cmd_multable,
}


def run(argv=None) -> int:
    """Run one command line and return its exit code."""
    parser = setup_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    configure_logging(args.quiet, args.log_file)
    error_logger = get_error_logger(log_dir())
    command_line = list(argv) if argv is not None else sys.argv[1:]
    source = describe_source(args)
    report = RunReport(command_line)
    started = time.perf_counter()

    try:
        code = COMMANDS[args.command](args, report)
    except ParseError as e:
        print(e.render(), file=sys.stderr)
        error_logger.log_run_error(source, 'PARSE_ERROR', str(e))
        code = EXIT_USAGE
    except (CatalogError, StructureConstantsError, WordError) as e:
        logging.error(str(e))
        error_logger.log_run_error(source, type(e).__name__, str(e))
        code = EXIT_USAGE
    except IncompleteBasisError as e:
        logging.error(str(e))
        error_logger.log_run_error(source, 'INCOMPLETE_BASIS', str(e))
        code = EXIT_BOUND
    except InfiniteQuotientError as e:
        logging.error(str(e))
        error_logger.log_run_error(source, 'INFINITE_QUOTIENT', str(e))
        code = EXIT_INFINITE
    except EnvelopeError as e:
        logging.error(str(e))
        error_logger.log_run_error(source, type(e).__name__, str(e))
        code = EXIT_USAGE
    except OSError as e:
        logging.error(f"Cannot read input: {e}")
        error_logger.log_run_error(source, 'IO_ERROR', str(e))
        code = EXIT_USAGE

    report.timings['total'] = time.perf_counter() - started
    if args.json:
        report.write_json(args.json)
    error_logger.log_session_summary(' '.join(command_line), code, report.timings['total'])
    return code


def main():
    """Main entry point for the envelope tools"""
    load_dotenv()
    sys.exit(run())


if __name__ == "__main__":
    main()
