"""Homotopy types of 4-dimensional toric orbifolds: exact tools and oracles."""
