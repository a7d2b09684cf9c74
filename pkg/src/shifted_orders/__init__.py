"""
shifted_orders: dominant dimension, shifted tilting modules and shifted algebras
of finite-dimensional algebras given by quivers with relations.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("shifted-orders")
except PackageNotFoundError:
    __version__ = "0.0.0"

# Public API
from .errors import ShiftedOrdersError  # noqa: E402
from .homology import Bounded, HomologicalProfile  # noqa: E402
from .settings import GlobalSettings, load_settings  # noqa: E402
from .toolkit import ShiftToolkit, ShiftToolkitError  # noqa: E402

__all__ = [
    "__version__",
    "Bounded",
    "GlobalSettings",
    "HomologicalProfile",
    "ShiftToolkit",
    "ShiftToolkitError",
    "ShiftedOrdersError",
    "load_settings",
]
