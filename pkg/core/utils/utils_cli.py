import argparse
from functools import wraps

from core.errors import DomainError


def parse_bool(value: str) -> bool:
    lowered = str(value).lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise argparse.ArgumentTypeError(f'expected a boolean, got {value}')


def common_parser() -> argparse.ArgumentParser:
    """Options shared by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', help='flat JSON document of parameters, overridden by flags')
    parser.add_argument('--output', help='output directory (default: $FOUNTAIN_OUTPUT_DIR or results)')
    parser.add_argument('--verbose', action='store_true', help='log at DEBUG level')
    return parser


def gen_parser(subparsers, name: str, attributes: dict) -> argparse.ArgumentParser:
    """Generates a subcommand parser whose flags follow the types of the default parameters.

    Flags default to None so that config file values are only overridden by flags actually given.

    :param subparsers: argparse subparsers action to add to
    :param name: handler key, stored as the parsed `command`
    :param attributes: handler attributes from the default commands
    :return: the generated parser
    """
    parser = subparsers.add_parser(attributes['aliases'][0],
                                   aliases=attributes['aliases'][1:],
                                   help=attributes['text'],
                                   description=attributes['text'],
                                   parents=[common_parser()])
    for key, default in attributes['params'].items():
        flag = '--' + key.replace('_', '-')
        kwargs = {'default': None, 'dest': key, 'help': f'default: {default}'}
        if isinstance(default, bool):
            kwargs.update(type=parse_bool, metavar='BOOL')
        elif isinstance(default, list):
            kwargs.update(type=type(default[0]), nargs='+')
        else:
            kwargs.update(type=type(default))
        parser.add_argument(flag, **kwargs)
    parser.set_defaults(command=name)
    return parser


def validated(method):
    """Validates the RunConfig passed to a handler before the handler runs."""
    @wraps(method)
    def inner(self, config, *args, **kwargs):
        try:
            config.validate()
        except DomainError as e:
            self.log.debug('Rejected %s: %s', config.command, e)
            raise
        return method(self, config, *args, **kwargs)
    return inner
