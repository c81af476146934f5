"""Domain layer - geometry, discretisations and solvers.

No I/O, no configuration parsing, no knowledge of the CLI. Depends only on
numpy and scipy.
"""
