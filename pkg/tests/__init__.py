"""Tests for dawg-morph."""
