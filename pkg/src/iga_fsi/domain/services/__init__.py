"""Domain services - stateless numerical operations, one subpackage per solver concern."""
