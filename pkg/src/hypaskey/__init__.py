"""Hyperbolic q-Askey integrals, semiclassical asymptotics, and Painleve generating functions."""

__version__ = "0.1.0"
