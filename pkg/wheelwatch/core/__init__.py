"""Core graph models, detectors and reductions for Wheel Watch."""
