"""Trapped-ion Quantum von Neumann simulator and resource estimator."""

__version__ = "0.1.0"
