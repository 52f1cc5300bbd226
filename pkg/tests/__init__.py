"""Test suite for qheine."""
