# tests/__init__.py
"""
Test suite
"""