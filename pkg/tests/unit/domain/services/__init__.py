"""Unit tests for domain services."""
