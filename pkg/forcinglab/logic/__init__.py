"""The forcing language and its Boolean-valued semantics."""
