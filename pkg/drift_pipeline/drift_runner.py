#!/usr/bin/env python3
"""
Drift Runner
Command-line entry point: run experiments, sweep grids, recompute published tables
"""

import argparse
import importlib
import sys

from drift_pipeline.drift_config import setup_logging, DEFAULT_LOG_FILE, PUBLISHED_TABLES_PATH
from drift_pipeline.drift_utils import load_key_value_file
from drift_pipeline.exceptions import ConfigError, DriftPipelineError

# Define available commands
COMMANDS = {
    'run': {
        'module': 'drift_pipeline.commands.run',
        'function': 'cmd_run',
        'description': 'Run one detector/selector configuration for a number of repeats'
    },
    'sweep': {
        'module': 'drift_pipeline.commands.sweep',
        'function': 'cmd_sweep',
        'description': 'Run a hyperparameter grid with baseline and SUDS selection'
    },
    'recompute': {
        'module': 'drift_pipeline.commands.recompute',
        'function': 'cmd_recompute',
        'description': 'Recompute HADAM and average difference from a results table'
    },
}

BOOLEAN_WORDS = {"1": True, "true": True, "yes": True, "on": True,
                 "0": False, "false": False, "no": False, "off": False}


def load_command_function(command_name):
    """Load a command function from its module"""
    if command_name not in COMMANDS:
        raise ConfigError(f"Unknown command: {command_name}")
    command_info = COMMANDS[command_name]
    module = importlib.import_module(command_info['module'])
    return getattr(module, command_info['function'])


def list_commands():
    """List all available commands"""
    print("Available commands:")
    print("-" * 50)
    for name, info in COMMANDS.items():
        print(f"{name}: {info['description']}")
    print("-" * 50)


def _number_list(cast):
    def parse(text):
        try:
            return [cast(v) for v in str(text).split(",") if v.strip()]
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid list '{text}': {e}")
    return parse


def _add_common(parser):
    parser.add_argument('--config', help='key=value config file; flags override it')
    parser.add_argument('--log-level', default='INFO', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--log-file', default=DEFAULT_LOG_FILE, help='log file ("" disables)')
    parser.add_argument('--out', help='report file (default: stdout)')
    parser.add_argument('--format', default='tsv', choices=['tsv', 'md'])


def _add_experiment(parser):
    parser.add_argument('--input', help='dataset file (.csv or .arff)')
    parser.add_argument('--generate', help="generator spec, e.g. 'sea;length=20000;drifts=5000,12000@500'")
    parser.add_argument('--header', action='store_true', help='CSV input has a header row')
    parser.add_argument('--detector', default='d3', choices=['d3', 'ocdd'])
    parser.add_argument('--gamma', type=float, help='RBF gamma for ocdd (default: scale rule)')
    parser.add_argument('--standardize', action='store_true', help='standardize each d3 window before fitting')
    parser.add_argument('--auc-folds', type=int, help='d3 cross-fitting folds (1: score the training window)')
    parser.add_argument('--update-mode', default='prequential_update', choices=['retrain_only', 'prequential_update'])
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--workers', type=int, help='parallel runs (default: CPU count)')


def build_parser():
    parser = argparse.ArgumentParser(prog='drift_runner', description='Drift Runner')
    subparsers = parser.add_subparsers(dest='command')

    run = subparsers.add_parser('run', help=COMMANDS['run']['description'])
    _add_common(run)
    _add_experiment(run)
    run.add_argument('--selector', default='baseline', choices=['baseline', 'suds'])
    run.add_argument('--w', type=int)
    run.add_argument('--rho', type=float)
    run.add_argument('--tau', type=float)
    run.add_argument('--nu', type=float)
    run.add_argument('--repeats', type=int, default=1)
    run.add_argument('--trace', help='write the per-step trace of repeat 0 to this CSV')

    sweep = subparsers.add_parser('sweep', help=COMMANDS['sweep']['description'])
    _add_common(sweep)
    _add_experiment(sweep)
    sweep.add_argument('--selector', default='both', choices=['baseline', 'suds', 'both'])
    sweep.add_argument('--w-grid', type=_number_list(int))
    sweep.add_argument('--rho-grid', type=_number_list(float))
    sweep.add_argument('--tau-grid', type=_number_list(float))
    sweep.add_argument('--nu-grid', type=_number_list(float))
    sweep.add_argument('--repeats', type=int, help='repeats per combination (default: grid default)')
    sweep.add_argument('--plot', help='write the HADAM difference heatmap to this HTML file')

    recompute = subparsers.add_parser('recompute', help=COMMANDS['recompute']['description'])
    _add_common(recompute)
    recompute.add_argument('--tables', default=PUBLISHED_TABLES_PATH, help='results table (TSV)')
    recompute.add_argument('--group', default='all', choices=['all', 'real_world', 'synthetic'])

    subparsers.add_parser('list', help='List available commands')
    parser.command_parsers = {'run': run, 'sweep': sweep, 'recompute': recompute}
    return parser


def apply_config_file(parser, argv):
    """Turn key=value lines of --config into defaults of the chosen subcommand"""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument('command', nargs='?')
    pre.add_argument('--config')
    known, _ = pre.parse_known_args(argv)
    if not known.config or known.command not in COMMANDS:
        return

    subparser = parser.command_parsers[known.command]
    actions = {action.dest: action for action in subparser._actions}
    defaults = {}
    for key, value in load_key_value_file(known.config).items():
        dest = 'generate' if key == 'generator' else key
        if dest not in actions or dest in ('config', 'help'):
            raise ConfigError(f"{known.config}: unknown setting '{key}' for {known.command}")
        if isinstance(actions[dest], argparse._StoreTrueAction):
            if value.lower() not in BOOLEAN_WORDS:
                raise ConfigError(f"{known.config}: '{key}' expects true/false, got '{value}'")
            defaults[dest] = BOOLEAN_WORDS[value.lower()]
        else:
            defaults[dest] = value
    subparser.set_defaults(**defaults)


def dispatch(args):
    if args.command == 'run':
        from drift_pipeline.commands.run import RunConfig
        load_command_function('run')(RunConfig(
            input=args.input, generate=args.generate, header=args.header,
            detector=args.detector, selector=args.selector,
            w=args.w, rho=args.rho, tau=args.tau, nu=args.nu, gamma=args.gamma,
            standardize=args.standardize, auc_folds=args.auc_folds,
            update_mode=args.update_mode, repeats=args.repeats, seed=args.seed,
            out=args.out, format=args.format, workers=args.workers, trace=args.trace,
        ))
    elif args.command == 'sweep':
        from drift_pipeline.commands.sweep import SweepConfig, SweepGrid
        grid = SweepGrid.default(
            args.detector,
            {'w': args.w_grid, 'rho': args.rho_grid, 'tau': args.tau_grid, 'nu': args.nu_grid},
            args.repeats,
        )
        selectors = ('baseline', 'suds') if args.selector == 'both' else (args.selector,)
        load_command_function('sweep')(SweepConfig(
            grid=grid, input=args.input, generate=args.generate, header=args.header,
            selectors=selectors, gamma=args.gamma, update_mode=args.update_mode, seed=args.seed,
            standardize=args.standardize, auc_folds=args.auc_folds,
            out=args.out, format=args.format, workers=args.workers, plot=args.plot,
        ))
    elif args.command == 'recompute':
        load_command_function('recompute')(args.tables, args.group, args.format, args.out)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        apply_config_file(parser, argv)
        args = parser.parse_args(argv)

        if not args.command:
            parser.print_help()
            return 0
        if args.command == 'list':
            list_commands()
            return 0

        setup_logging(args.log_level, args.log_file or None)
        dispatch(args)
        return 0
    except (DriftPipelineError, OSError) as e:
        message = str(e).replace('\t', ' ').replace('\n', ' ')
        print(f"error\t{type(e).__name__}\t{message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
