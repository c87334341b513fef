"""Axioms module: the finite Qiana closure and optional packs."""
