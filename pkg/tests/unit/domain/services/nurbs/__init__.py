"""Unit tests for the NURBS and Bézier geometry kernel."""
