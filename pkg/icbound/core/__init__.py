"""
Core exceptions and logging
"""
