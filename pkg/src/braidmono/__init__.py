"""Exact braid monodromy factorizations and their degree-doubling construction."""
