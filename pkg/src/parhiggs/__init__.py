"""Exact Poincaré polynomials of rank-3 parabolic Higgs moduli, parabolic
triples, rank-3 parabolic bundles and symmetric products of curves."""
from importlib.metadata import PackageNotFoundError, version as _version

try:
    __version__ = _version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"
