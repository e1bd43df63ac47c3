"""Extensional collapse and Boolean-valued names."""
