import logging
import sys

from core.fountain import Fountain

if __name__ == '__main__':
    fountain = Fountain(log_level=logging.INFO)
    sys.exit(fountain.run())
