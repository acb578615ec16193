"""
fdots Test Suite

Contains unit, integration and property tests.
"""
