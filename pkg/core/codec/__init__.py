from .decoder import Decoder, DecoderSnapshot, Reception
from .encoder import Encoder
from .symbols import InputBlock, OutputSymbol
