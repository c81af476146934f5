"""iga-fsi - isogeometric fluid-structure interaction in two dimensions."""

__version__ = "0.1.0"
