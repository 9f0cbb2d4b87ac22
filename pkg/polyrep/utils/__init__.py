from .config import EngineConfig
from .linalg import rank, row_echelon, solve

__all__ = ["EngineConfig", "rank", "row_echelon", "solve"]
