"""
fdots Unit Tests

Contains unit tests for individual components.
"""
