"""Kakeya constructions, verification, incidence ranks, decoding, bounds and reports."""
