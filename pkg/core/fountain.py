"""
    Command-line toolkit for LT codes with acknowledgment feedback: closed-form reduced degree analysis and
    erasure channel simulations, written as CSV tables with a JSON manifest per run.
"""

import argparse
import logging
from typing import Sequence

from core import ANALYZE, EXIT_INVALID, EXIT_OK, EXIT_RUNTIME, SIMULATE
from core.analysis import Analyzer
from core.default_commands import commands
from core.errors import DomainError
from core.fountainable import Fountainable
from core.simulator.simulator import Simulator
from core.store import RunConfig
from core.utils.utils import log_entexit, read_config, setup_log

"""Parsed attributes that are not run parameters
"""
CONTROL_ARGS = ('group', 'subcommand', 'command', 'handler', 'config', 'verbose')


class Fountain(Fountainable):

    def __init__(self, log_level: int = logging.INFO):
        super().__init__()
        self.log_level = log_level
        self.analyzer = Analyzer()
        self.simulator = Simulator()
        self.parser = argparse.ArgumentParser(prog='fountain', description=__doc__)
        self.add_handlers(self.parser)

    def add_handlers(self, parser):
        groups = parser.add_subparsers(dest='group', required=True)
        analyze = groups.add_parser(ANALYZE, help='closed-form reduced degree distributions')
        self.analyzer.add_handlers(analyze.add_subparsers(dest='subcommand', required=True))
        simulate = groups.add_parser(SIMULATE, help='erasure channel experiments')
        self.simulator.add_handlers(simulate.add_subparsers(dest='subcommand', required=True))

    @log_entexit
    def gen_config(self, args: argparse.Namespace) -> RunConfig:
        """Merges the command defaults, the config file and the given flags, in increasing precedence.

        :param args: parsed command line
        :return: the unvalidated run configuration
        """
        flags = {key: value for key, value in vars(args).items() if key not in CONTROL_ARGS}
        file_config = read_config(args.config) if args.config else {}
        return RunConfig.merged(args.command, commands[args.command]['params'], file_config, flags)

    def run(self, argv: Sequence[str] = None) -> int:
        """Parses `argv` and runs the selected subcommand.

        :return: process exit code
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_INVALID
        setup_log(logging.DEBUG if args.verbose else self.log_level)
        try:
            paths = args.handler(self.gen_config(args))
        except DomainError as e:
            self.log.error('Invalid arguments: %s', e)
            return EXIT_INVALID
        except Exception as e:
            self.log.exception('%s failed: %s', args.command, e)
            return EXIT_RUNTIME
        self.log.info('%s finished, %d files written', args.command, len(paths))
        return EXIT_OK
