"""
Tests package for the lexical complexity toolkit.
"""
