"""Test suite for iga-fsi."""
