"""Kakeya sets over Z/NZ: exact constructions, verification, rank certificates and bounds."""

__version__ = "0.1.0"
