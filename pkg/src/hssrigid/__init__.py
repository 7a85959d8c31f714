"""Exact verification workbench for rigidity computations on compact Hermitian symmetric spaces."""

__version__ = "0.1.0"
