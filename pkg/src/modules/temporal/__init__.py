"""Temporal module: event-calculus pack."""
