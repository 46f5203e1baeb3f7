"""Sharp pre-Schwarzian bounds for Nehari-type classes, computed and checked numerically."""

__version__ = "0.1.0"

from .catalog import MapEntry, catalog_lookup
from .classes import ClassSpec
from .jets import DiskPoint, Jet3
from .schwarzian import class_membership, pre_schwarzian, schwarzian

__all__ = [
    "ClassSpec", "DiskPoint", "Jet3", "MapEntry",
    "catalog_lookup", "class_membership", "pre_schwarzian", "schwarzian",
]
