"""Unit tests for the fluid-structure coupling services."""
