"""Syntax module: immutable terms and formulas, quotation-set classifiers."""
