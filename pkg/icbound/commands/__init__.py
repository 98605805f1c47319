# icbound/commands/__init__.py
"""
Command-line sub-commands
"""

from icbound.commands import bounds, design, minrank, simulate

__all__ = ["bounds", "design", "minrank", "simulate"]
