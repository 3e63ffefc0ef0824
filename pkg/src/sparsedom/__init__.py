"""Distributed dominating set approximation on sparse graphs, simulated in the LOCAL model."""
