import math
from typing import List

import numpy as np

from core import ANALYZE
from core.default_commands import commands
from core.degree import (
    LayerConfig,
    adaptive_degree_dist,
    n_layer_reduced_dist,
    reduced_degree_dist,
    redundancy_prob_acked,
    redundancy_surface,
    robust_soliton,
)
from core.fountainable import Fountainable
from core.simulator import estimate_reduced_degrees
from core.store import ResultStore, RunConfig
from core.utils.utils import log_entexit
from core.utils.utils_cli import gen_parser, validated


class Analyzer(Fountainable):
    """Closed-form reduced degree analysis, one CSV per `analyze` subcommand."""

    @log_entexit
    def add_handlers(self, subparsers):
        for key, attributes in commands.items():
            if attributes['type'] == ANALYZE:
                gen_parser(subparsers, key, attributes).set_defaults(handler=getattr(self, attributes['method']))

    @log_entexit
    @validated
    def reduced(self, config: RunConfig) -> List[str]:
        k = config.k
        original = robust_soliton(config.rsd)
        header = ['decoded', 'undecoded', 'redundancy']
        if config.samples:
            header += ['monte_carlo', 'monte_carlo_stderr']
        rows = []
        for decoded in range(k + 1):
            L = k - decoded
            row = [decoded, L, reduced_degree_dist(original, L).pmf[0]]
            if config.samples:
                row += self._estimate_redundancy(config, LayerConfig.single(k), (L,), stream=(decoded,))
            rows.append(row)
        return self._save(config, {'': (header, rows)})

    @log_entexit
    @validated
    def reduced_acked(self, config: RunConfig) -> List[str]:
        original = robust_soliton(config.rsd)
        L = config.L
        rows = [[M, L, redundancy_prob_acked(original, L, M)] for M in range(config.k - L + 1)]
        return self._save(config, {'': (['acked', 'undecoded', 'redundancy'], rows)})

    @log_entexit
    @validated
    def adaptive(self, config: RunConfig) -> List[str]:
        original = robust_soliton(config.rsd)
        L = config.L
        rho = adaptive_degree_dist(original, L)
        reduced = reduced_degree_dist(original, L)
        rows = [[d, rho.pmf[d], reduced.pmf[d], original.pmf[d]] for d in range(1, L + 1)]
        return self._save(config, {'': (['degree', 'adaptive', 'reduced', 'original'], rows)})

    @log_entexit
    @validated
    def two_layer(self, config: RunConfig) -> List[str]:
        layers = config.layers
        original = robust_soliton(config.rsd)
        base_grid, refinement_grid = (_grid(size, config.step) for size in layers.layer_sizes)
        surface = redundancy_surface(original, layers, base_grid, refinement_grid)
        header = ['base_undecoded', 'refinement_undecoded', 'redundancy']
        if config.samples:
            header += ['monte_carlo', 'monte_carlo_stderr']
        rows = []
        for a, L_B in enumerate(base_grid):
            for b, L_R in enumerate(refinement_grid):
                row = [L_B, L_R, surface[a, b]]
                if config.samples:
                    row += self._estimate_redundancy(config, layers, (L_B, L_R), stream=(L_B, L_R))
                rows.append(row)
        return self._save(config, {'': (header, rows)})

    @log_entexit
    @validated
    def n_layer(self, config: RunConfig) -> List[str]:
        layers = config.layers
        reduced = n_layer_reduced_dist(robust_soliton(config.rsd), layers, config.undecoded)
        header = [f'reduced_{n}' for n in range(layers.n_layers)] + ['probability']
        rows = [list(index) + [reduced.pmf[index]] for index in np.ndindex(reduced.pmf.shape)]
        self.log.info('Redundancy at undecoded %s: %.6g', config.undecoded, reduced.redundancy)
        return self._save(config, {'': (header, rows)})

    def _estimate_redundancy(self, config: RunConfig, layers: LayerConfig, undecoded, stream):
        estimate = estimate_reduced_degrees(config.rsd, layers, undecoded, config.samples, config.seed, stream)
        p = float(estimate[(0,) * len(undecoded)])
        return [p, math.sqrt(p * (1 - p) / config.samples)]

    @staticmethod
    def _save(config: RunConfig, tables) -> List[str]:
        return ResultStore(config.output).save(f"{ANALYZE}-{commands[config.command]['aliases'][0]}",
                                               config, tables)


def _grid(size: int, step: int) -> List[int]:
    grid = list(range(0, size + 1, step))
    if grid[-1] != size:
        grid.append(size)
    return grid
