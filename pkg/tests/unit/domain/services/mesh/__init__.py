"""Unit tests for the fluid tessellation services."""
