"""Posets, the regular-open algebra and filters."""
