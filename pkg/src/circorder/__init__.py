"""Exact computation with circularly ordered and left ordered groups."""
