"""Frontend module: surface language parser and elaborator."""
