"""Graphs, maps, voltage liftings, algebraic-system models and graph phases."""

__version__ = "0.1.0"
