"""Integration tests - Tests with real infrastructure dependencies."""
