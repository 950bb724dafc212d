import logging
from abc import ABC, abstractmethod


class Fountainable(ABC):
    def __init__(self):
        self.log = self._aggregate_logger()

    def _aggregate_logger(self):
        if self.__class__.__name__.lower() in ('fountainable', 'fountain'):
            name = 'fountain'
        else:
            name = 'fountain.' + self.__class__.__name__.lower()
        return logging.getLogger(name)

    @abstractmethod
    def add_handlers(self, subparsers):
        pass
