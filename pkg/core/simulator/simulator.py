from typing import List

from core import SIMULATE
from core.default_commands import commands
from core.fountainable import Fountainable
from core.simulator.experiments import experiment_distortion, experiment_single_layer, experiment_two_layer
from core.store import ResultStore, RunConfig
from core.utils.utils import log_entexit
from core.utils.utils_cli import gen_parser, validated


class Simulator(Fountainable):

    @log_entexit
    def add_handlers(self, subparsers):
        for key, attributes in commands.items():
            if attributes['type'] == SIMULATE:
                gen_parser(subparsers, key, attributes).set_defaults(handler=getattr(self, attributes['method']))

    @log_entexit
    @validated
    def single(self, config: RunConfig) -> List[str]:
        self.log.info('Running %d single-layer trials per scheme with k=%d', config.runs, config.k)
        result = experiment_single_layer(config.k, config.runs, config.seed,
                                         c=config.c, delta=config.delta, width=config.width,
                                         threads=config.threads)
        return self._save(config, {'': result.curve_rows(), '_summary': result.summary_rows()})

    @log_entexit
    @validated
    def two_layer(self, config: RunConfig) -> List[str]:
        self.log.info('Running %d two-layer trials per scheme with k=%d, alpha=%g, beta=%g',
                      config.runs, config.k, config.alpha, config.beta)
        result = experiment_two_layer(config.k, config.alpha, config.beta, config.runs, config.seed,
                                      c=config.c, delta=config.delta, width=config.width,
                                      ack=config.ack, reparameterize=config.reparameterize,
                                      threads=config.threads)
        return self._save(config, {'': result.curve_rows(), '_summary': result.summary_rows()})

    @log_entexit
    @validated
    def distortion(self, config: RunConfig) -> List[str]:
        grid = config.ser_grid
        self.log.info('Running %d seconds of video at %d erasure rates', config.seconds, len(grid))
        result = experiment_distortion(config.k, config.alpha, config.beta, grid, config.seconds, config.seed,
                                       c=config.c, delta=config.delta, width=config.width,
                                       ack=config.ack, reparameterize=config.reparameterize,
                                       deadline_basis=config.deadline_basis, threads=config.threads)
        return self._save(config, {'': result.rows()})

    @staticmethod
    def _save(config: RunConfig, tables) -> List[str]:
        return ResultStore(config.output).save(f"{SIMULATE}-{commands[config.command]['aliases'][0]}",
                                               config, tables)
