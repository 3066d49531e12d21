"""Simulation of Ising-coupling quantum gates protected by dynamical decoupling."""

__version__ = "0.1.0"
