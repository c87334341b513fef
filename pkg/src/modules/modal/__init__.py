"""Modal module: embedding of propositional modal systems."""
