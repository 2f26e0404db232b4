"""Test suite for the decochain package."""
