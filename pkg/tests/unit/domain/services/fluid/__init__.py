"""Unit tests for the DG flow solver."""
