"""Deterministic mock chat application and its instance process."""
