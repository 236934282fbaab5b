"""Integration tests for funtf."""
