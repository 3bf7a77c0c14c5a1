"""Tests for the divrisk library."""
