# core/__init__.py
__version__ = "0.1.0"

from .config import ConfigManager
from .field import FieldCtx, VarCtx
from .poly import MultiPoly
from .parse import parse_poly
from .fedder import FrobeniusLevel, fpure_hypersurface
from .fibration import CubicFamily, FibrationScanner

__all__ = [
    "__version__",
    "ConfigManager",
    "FieldCtx",
    "VarCtx",
    "MultiPoly",
    "parse_poly",
    "FrobeniusLevel",
    "fpure_hypersurface",
    "CubicFamily",
    "FibrationScanner",
]
