"""
Computation engines
"""
