"""Centralizer structure and solubility invariants of finite permutation groups."""
