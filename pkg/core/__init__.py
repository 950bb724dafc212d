__version__ = '0.3.0'

"""Feedback policy kinds
"""
NONE = 'none'
PER_SYMBOL_ACK = 'per_symbol_ack'
LAYER_ACK = 'layer_ack'

"""Degree distribution modes used under per-symbol ACK
"""
ORIGINAL = 'original'
ADAPTIVE = 'adaptive'

"""Deadline bases
"""
SENT = 'sent'
RECEIVED = 'received'

"""Handler type names
"""
ANALYZE = 'analyze'
SIMULATE = 'simulate'

"""Robust Soliton defaults, the values found to minimise the average overhead
"""
DEFAULT_C = 0.1
DEFAULT_DELTA = 1.0

"""Payload width in bytes
"""
DEFAULT_WIDTH = 8

"""Video stream the distortion model is built on
"""
BITRATE = 10 ** 6
FRAME_WIDTH = 480
FRAME_HEIGHT = 320
FPS = 30
DEADLINE_FACTOR = 2

"""Numerical tolerances
"""
PMF_TOLERANCE = 1e-9
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-10

"""Output formatting
"""
CSV_PRECISION = '.9g'
DEFAULT_OUTPUT_DIR = 'results'
OUTPUT_DIR_ENV = 'FOUNTAIN_OUTPUT_DIR'

"""Exit codes
"""
EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RUNTIME = 3
