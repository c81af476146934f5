"""Unit tests - Fast tests with no I/O dependencies."""
