"""Unit tests for the structural solvers."""
