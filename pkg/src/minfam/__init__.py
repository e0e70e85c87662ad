"""Minimal families of rational curves on weak del Pezzo pairs."""

__version__ = "0.1.0"
