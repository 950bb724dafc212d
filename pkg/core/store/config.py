from argparse import ArgumentTypeError
from dataclasses import asdict, dataclass
from typing import Optional, Tuple, Union, get_args, get_origin, get_type_hints

from core import DEFAULT_C, DEFAULT_DELTA, DEFAULT_WIDTH, RECEIVED, SENT
from core.degree import LayerConfig, RsdParams
from core.errors import DomainError
from core.simulator import ACK_CHOICES, ChannelParams
from core.utils.utils import parse_grid
from core.utils.utils_cli import parse_bool

"""Commands whose parameters are checked beyond the common fields
"""
LAYERED_COMMANDS = ('analyze_two_layer', 'simulate_two_layer', 'simulate_distortion')


@dataclass
class RunConfig:
    """Every parameter a command can take; defaults < config file < flags."""
    command: str = ''
    k: int = 100
    c: float = DEFAULT_C
    delta: float = DEFAULT_DELTA
    width: int = DEFAULT_WIDTH
    alpha: float = 0.5
    beta: float = 9.0
    alphas: Tuple[float, ...] = ()
    weights: Tuple[float, ...] = ()
    undecoded: Tuple[int, ...] = ()
    L: Optional[int] = None
    ack: str = 'both'
    reparameterize: bool = True
    ser: str = '0:0.05:1'
    runs: int = 100
    seconds: int = 100
    seed: int = 1
    threads: Optional[int] = None
    deadline_basis: str = SENT
    output: Optional[str] = None
    samples: int = 0
    step: int = 1

    @classmethod
    def merged(cls, command: str, *sources: dict) -> 'RunConfig':
        """Builds a config from dicts of increasing precedence; None values do not override.

        Values are coerced to the field types, so a config file may carry "30" for k.
        """
        hints = get_type_hints(cls)
        values = {}
        for source in sources:
            unknown = set(source) - set(hints)
            if unknown:
                raise DomainError(f'unknown parameters {sorted(unknown)} for {command}')
            values.update({key: _coerce(key, value, hints[key])
                           for key, value in source.items() if value is not None})
        values['command'] = command
        return cls(**values)

    def as_dict(self) -> dict:
        values = asdict(self)
        for key in ('alphas', 'weights', 'undecoded'):
            values[key] = list(values[key])
        return values

    @property
    def rsd(self) -> RsdParams:
        return RsdParams(self.k, self.c, self.delta)

    @property
    def layers(self) -> LayerConfig:
        if self.command == 'analyze_n_layer':
            return LayerConfig.from_fractions(self.k, self.alphas, self.weights)
        return LayerConfig.two_layer(self.k, self.alpha, self.beta)

    @property
    def ser_grid(self):
        return parse_grid(self.ser)

    def validate(self):
        """Checks every field against the preconditions of the module that consumes it.

        :raise DomainError: naming the first violated precondition
        """
        self.rsd  # checks k, c and delta
        for name in ('width', 'runs', 'seconds', 'step'):
            if getattr(self, name) < 1:
                raise DomainError(f'{name} must be positive, got {getattr(self, name)}')
        if self.seed < 0:
            raise DomainError(f'seed must be nonnegative, got {self.seed}')
        if self.samples < 0:
            raise DomainError(f'samples must be nonnegative, got {self.samples}')
        if self.threads is not None and self.threads < 0:
            raise DomainError(f'threads must be nonnegative (0 uses every core), got {self.threads}')
        if self.ack not in ACK_CHOICES:
            raise DomainError(f'ack must be one of {tuple(ACK_CHOICES)}, got {self.ack}')
        if self.deadline_basis not in (SENT, RECEIVED):
            raise DomainError(f'deadline basis must be {SENT} or {RECEIVED}, got {self.deadline_basis}')

        if self.command == 'analyze_reduced_acked' and (self.L is None or not 0 <= self.L <= self.k):
            raise DomainError(f'L must lie in [0, {self.k}], got {self.L}')
        if self.command == 'analyze_adaptive' and (self.L is None or not 1 <= self.L <= self.k):
            raise DomainError(f'L must lie in [1, {self.k}], got {self.L}')
        if self.command in LAYERED_COMMANDS or self.command == 'analyze_n_layer':
            layers = self.layers
        if self.command == 'analyze_n_layer':
            if len(self.undecoded) != layers.n_layers:
                raise DomainError(f'{len(self.undecoded)} undecoded counts for {layers.n_layers} layers')
            for L, size in zip(self.undecoded, layers.layer_sizes):
                if not 0 <= L <= size:
                    raise DomainError(f'undecoded count {L} must lie in [0, {size}]')
        if self.command == 'simulate_distortion':
            for ser in self.ser_grid:
                ChannelParams(ser)
        return self


def _coerce(key: str, value, hint):
    """Converts a flag or config file value to the type of its RunConfig field."""
    if get_origin(hint) is Union:
        hint = next(arg for arg in get_args(hint) if arg is not type(None))
    try:
        if get_origin(hint) is tuple:
            items = value if isinstance(value, (list, tuple)) else [value]
            return tuple(_coerce(key, item, get_args(hint)[0]) for item in items)
        if hint is bool:
            return value if isinstance(value, bool) else parse_bool(value)
        if isinstance(value, (bool, list, tuple, dict)):
            raise TypeError(type(value).__name__)
        if hint is int:
            number = float(value)
            if number != int(number):
                raise ValueError('not an integer')
            return int(number)
        return hint(value)
    except DomainError:
        raise
    except (TypeError, ValueError, OverflowError, ArgumentTypeError) as e:
        expected = getattr(hint, '__name__', 'list')
        raise DomainError(f'{key} must be of type {expected}, got {value!r}') from e
