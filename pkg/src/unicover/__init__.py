"""Exact-arithmetic toolkit for uniform covers of tours and 2-edge-connected
multigraphs, with certified approximation algorithms on small graphs."""

__version__ = "0.1.0"
