from .config import RunConfig
from .result_store import ResultStore
