"""Tests for alexdec."""
