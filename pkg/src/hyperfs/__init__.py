"""Meta-heuristic feature selection in hypercomplex search spaces."""

__version__ = "0.1.0"
