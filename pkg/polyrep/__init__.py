__version__ = "0.0.1"

from .base import *
from .parser import *
from .systems import *
from .utils import *
from .errors import PolyrepError

__all__ = ["PolyrepError"]
