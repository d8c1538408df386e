"""Unit tests for conclab."""
