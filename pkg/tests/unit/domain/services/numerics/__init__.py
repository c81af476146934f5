"""Unit tests for quadrature, solvers and time integrators."""
