"""Workers package for concurrent sweep and optimizer evaluations."""

from .pool import map_ordered

__all__ = [
    "map_ordered"
]
