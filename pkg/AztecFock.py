import logging
import sys
from argparse import ArgumentParser
from pathlib import Path
from typing import Dict, List, Optional, Type

from Commands.Arctic import Arctic
from Commands.ExtendedCheck import ExtendedCheck
from Commands.Gauge import Gauge
from Commands.Inverse import Inverse
from Commands.Partition import Partition
from Commands.Phase import Phase
from Commands.Probabilities import Probabilities
from Commands.Sample import Sample
from Commands.SelfTest import SelfTest
from Commands.Validate import Validate
from Commands.Weights import Weights
from Interfaces.CommandInterface import CommandInterface
from Utils.Errors import ConfigError, ConvergenceError, SingularityError, \
    VerificationError
from Utils.Logging.Logging import Logging
from Utils.Logging.Store.Actions.LoggingActions import LoggingStoreActions
from Utils.Logging.Store.Logging import LoggingStore
from Utils.Output import encode
from Utils.Store.Actions.ConfigStoreActions import ConfigStoreActions
from Utils.Store.Config import ConfigStore

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMANDS: Dict[str, Type[CommandInterface]] = {
    command.name: command for command in (
        Validate, Weights, Partition, Inverse, Probabilities, Sample, Arctic,
        Phase, Gauge, ExtendedCheck, SelfTest
    )
}

logger = Logging('AztecFock').logger


def build_parser() -> ArgumentParser:
    """
    Command line parser with one subparser per command

    :return: Parser
    """
    parser = ArgumentParser(
        prog='AztecFock',
        description='Dimers on the Aztec diamond with Fock\'s weights'
    )
    parser.add_argument('--config', metavar='FILE',
                        help='JSON config, a path or the name of a shipped '
                             'config')
    parser.add_argument('--out-dir',
                        help='Directory for every output file, the working '
                             'directory by default')
    parser.add_argument('--quiet', action='store_true',
                        help='Log at INFO instead of DEBUG')
    parser.add_argument('--xlsx', action='store_true',
                        help='Also write the result tables to a workbook')
    parser.add_argument('--logbook', action='store_true',
                        help='Save the run logbook as XLSX')

    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    for name, command in COMMANDS.items():
        command.add_arguments(subparsers.add_parser(name, help=command.help))

    return parser


def config_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path

    shipped = ConfigStore.get_config_path(name)
    if shipped.exists():
        return shipped

    raise ConfigError('No config {!r}'.format(name))


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one command and print its JSON summary

    :param argv: Arguments without the program name

    :return: 0 on success, 2 on a config error, 3 on a numerical or
             verification failure
    """
    try:
        arguments = build_parser().parse_args(argv)
    except SystemExit as error:
        return EXIT_OK if error.code in (0, None) else EXIT_CONFIG

    if arguments.quiet:
        Logging.set_level(logging.INFO)

    ConfigStore.reset()
    LoggingStore.reset()

    config = ConfigStore()
    logging_store = LoggingStore().logging_store

    logging_store.dispatch(LoggingStoreActions.add_log(
        what='Started AztecFock.py {}'.format(arguments.command),
        why='Run',
        how='Terminal',
        result='Application started'
    ))

    code = EXIT_OK

    try:
        if arguments.config:
            config.config_store.dispatch(ConfigStoreActions.load_config(
                ConfigStore.read_json(config_path(arguments.config))
            ))

        command = COMMANDS[arguments.command](arguments)
        command.run()
        result = command.results()

        if not result['passed']:
            code = EXIT_NUMERICAL

        if arguments.out_dir:
            config.config_store.dispatch(ConfigStoreActions.save_to_disk(
                str(Path(arguments.out_dir).joinpath('config.json'))
            ))
        print(encode(result))
    except ConfigError as error:
        logger.error('Configuration error: %s', error)
        print('error: {}'.format(error), file=sys.stderr)
        code = EXIT_CONFIG
    except (SingularityError, ConvergenceError, VerificationError) as error:
        logger.error('Numerical failure: %s', error)
        print('error: {}'.format(error), file=sys.stderr)
        code = EXIT_NUMERICAL

    logging_store.dispatch(LoggingStoreActions.add_log(
        what='Finished AztecFock.py {}'.format(arguments.command),
        why='Run',
        how='Terminal',
        result='Exit code {}'.format(code)
    ))

    if arguments.logbook:
        logging_store.dispatch(
            LoggingStoreActions.save_to_disk(arguments.out_dir)
        )

    return code


if __name__ == '__main__':
    sys.exit(run(sys.argv[1:]))
