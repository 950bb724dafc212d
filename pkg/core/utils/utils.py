import json
import logging
import os
import subprocess
from functools import wraps
from typing import List

import numpy as np

from core import CSV_PRECISION, __version__
from core.errors import DomainError

log = logging.getLogger('fountain.utils')


def read_config(config_file):
    """Reads a flat JSON config document, searching one directory up if the path is not found.

    :param config_file: File name to search for
    :return: Dict of the parsed key-value pairs.
    """
    if not os.path.exists(config_file):
        config_file = os.path.dirname(os.getcwd()) + '/' + config_file
    try:
        with open(config_file) as f:
            config = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f'cannot read config file {config_file}: {e}')
    if not isinstance(config, dict) or any(isinstance(v, dict) for v in config.values()):
        raise DomainError(f'config file {config_file} must be a flat key-value document')
    return config


def parse_grid(expr: str) -> List[float]:
    """Parses a grid of the form 'start:step:stop' (stop inclusive) or a comma separated list.

    :param expr: grid expression, e.g. '0:0.05:1'
    :return: list of grid values
    """
    try:
        values = [float(v) for v in str(expr).replace(':', ',').split(',')]
    except ValueError as e:
        raise DomainError(f'invalid grid {expr}: {e}') from e
    if ':' not in str(expr):
        return values
    if len(values) != 3:
        raise DomainError(f'invalid grid {expr}: expected start:step:stop')
    start, step, stop = values
    if step <= 0 or stop < start:
        raise DomainError(f'invalid grid {expr}: step must be positive and stop >= start')
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(value)
    return format(float(value), CSV_PRECISION)


def run_version():
    """Git-style version string of the working tree, falling back to the package version."""
    try:
        out = subprocess.run(['git', 'describe', '--always', '--dirty', '--tags'],
                             capture_output=True, text=True, timeout=5,
                             cwd=os.path.dirname(os.path.abspath(__file__)))
        if out.returncode == 0 and out.stdout.strip():
            return f'{__version__}+{out.stdout.strip()}'
    except (OSError, subprocess.SubprocessError):
        pass
    return __version__


def setup_log(log_level):
    logging.basicConfig(level=log_level,
                        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')


def log_entexit(method):
    @wraps(method)
    def _impl(self, *args, **kwargs):
        self.log.debug('Entering: %s', method.__name__)
        tmp = method(self, *args, **kwargs)
        if tmp is not None:
            self.log.debug('%s', tmp)
        self.log.debug('Exiting: %s', method.__name__)
        return tmp
    return _impl
