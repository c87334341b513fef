"""Typed module: many-sorted Qiana."""
