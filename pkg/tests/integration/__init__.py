"""Integration tests for conclab."""
