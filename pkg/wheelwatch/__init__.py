"""Wheel Watch: Truemper configuration detection and SAT gadget reductions."""
