"""Test package for conclab."""
