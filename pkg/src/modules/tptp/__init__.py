"""TPTP module: FOF/TFF emission and reading."""
