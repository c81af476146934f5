"""Entrypoints - command-line surface of the simulator."""
