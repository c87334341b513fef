"""Runner module: compile pipeline, prover integration and HTTP routes."""
