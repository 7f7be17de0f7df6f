"""Command-line surface for Wheel Watch."""
