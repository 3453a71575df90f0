"""Tests for laver_tables."""
