"""Geometric degree encodings: exact algebra, ringed spaces and reduction harnesses."""

__version__ = "0.1.0"
