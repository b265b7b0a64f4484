"""
Test suite for the fmzv verifier.
"""
