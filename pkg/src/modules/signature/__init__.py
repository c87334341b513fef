"""Signature module: base symbols, quotable variables and the augmented signature."""
