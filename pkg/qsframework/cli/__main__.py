"""
Command line entry point

    qsframework <experiment> --config PATH [--threads N] [--out DIR]
    qsframework run --config PATH [--threads N] [--out DIR]
    qsframework validate --config PATH
    qsframework ledger-replay --ledger PATH

Exit status 0 when every invariant holds, 1 on an invariant failure or a numerical breakdown and 2 on a
configuration error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from qsframework.core.exceptions import ConfigurationException, LedgerInvariantException, StabilityBoundException, \
    UnknownTermException
from qsframework.ledger.history import LedgerHistory
from .config import load_config, parse_config, validate
from .experiment import registry
from .runner import EXIT_CONFIGURATION, EXIT_INVARIANT_FAILED, EXIT_PASSED, PARAMETER_ERRORS, RUN_FAILURES, \
    jsonable, run_experiment


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='qsframework', description='Stochastic quantum mechanics experiments.')
    parser.add_argument('--verbose', '-v', action='store_true', help='log progress at info level')
    commands = parser.add_subparsers(dest='command', required=True)

    experiments = registry()
    for name in ['run'] + sorted(experiments):
        help_text = 'run the experiment named in the configuration' if name == 'run' else f'run {name}'
        command = commands.add_parser(name, help=help_text)
        command.add_argument('--config', required=True, help='YAML experiment configuration')
        command.add_argument('--threads', type=int, default=None, help='thread cap, overrides QSF_THREADS')
        command.add_argument('--out', default=None, help='output root, overrides QSF_OUTPUT_DIR')

    checker = commands.add_parser('validate', help='check a configuration without running it')
    checker.add_argument('--config', required=True)

    replay = commands.add_parser('ledger-replay', help='re-verify a ledger history JSON log')
    replay.add_argument('--ledger', required=True)
    return parser


def _report_diagnostics(diagnostics: List[str]) -> int:
    for diagnostic in diagnostics:
        print(diagnostic, file=sys.stderr)
    return EXIT_CONFIGURATION


def _validate(path: str) -> int:
    config_path = Path(path)
    if not config_path.is_file():
        return _report_diagnostics([f"{config_path}: no such file"])
    try:
        data = parse_config(config_path.read_text(encoding='utf-8'), str(config_path))
    except ConfigurationException as error:
        return _report_diagnostics(error.diagnostics)
    diagnostics = validate(data)
    if diagnostics:
        return _report_diagnostics([f"{config_path}: {diagnostic}" for diagnostic in diagnostics])
    print(f"{config_path}: valid")
    return EXIT_PASSED


def _run(command: str, args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
        if command != 'run' and config.experiment != command:
            raise ConfigurationException([f"{args.config}: configures {config.experiment!r}, not {command!r}"])
        report = run_experiment(config, args.threads, args.out)
    except ConfigurationException as error:
        return _report_diagnostics(error.diagnostics)
    except StabilityBoundException as error:
        return _report_diagnostics([f"{args.config}: parameter 'dt': {error}"])
    except PARAMETER_ERRORS as error:
        return _report_diagnostics([f"{args.config}: {error}"])
    except RUN_FAILURES as error:
        print(f"{args.config}: {error}", file=sys.stderr)
        if getattr(error, 'step', None) is not None:
            print(f"failed at step {error.step}", file=sys.stderr)
        for iteration, residual in enumerate(getattr(error, 'history', None) or [], start=1):
            print(f"residual {iteration}: {residual!r}", file=sys.stderr)
        return EXIT_INVARIANT_FAILED

    result = report.result
    print(json.dumps({'directory': str(report.directory), 'passed': result.passed, 'summary': result.summary,
                      'invariants': {name: check.to_dict() for name, check in result.invariants.items()}},
                     indent=2, sort_keys=True, default=jsonable))
    for name in result.failures():
        check = result.invariants[name]
        print(f"invariant {name} failed: {check.value!r} > {check.threshold!r}", file=sys.stderr)
    return report.exit_code


def _replay(path: str) -> int:
    ledger_path = Path(path)
    if not ledger_path.is_file():
        return _report_diagnostics([f"{ledger_path}: no such file"])
    try:
        history = LedgerHistory.read(ledger_path)
        final = history.replay()
    except (KeyError, ValueError, UnknownTermException) as error:
        return _report_diagnostics([f"{ledger_path}: malformed ledger ({error})"])
    except LedgerInvariantException as error:
        print(f"{ledger_path}: {error}", file=sys.stderr)
        return EXIT_INVARIANT_FAILED
    print(json.dumps({'transitions': len(history), 'mass': history.initial.mass, 'final': final.to_dict()},
                     indent=2, sort_keys=True))
    return EXIT_PASSED


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    if args.command == 'validate':
        return _validate(args.config)
    if args.command == 'ledger-replay':
        return _replay(args.ledger)
    return _run(args.command, args)


if __name__ == '__main__':
    sys.exit(main())
