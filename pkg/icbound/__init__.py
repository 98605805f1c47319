"""
icbound Package
Bounds and transmission schemes for index coding with (coded) side information
"""

__version__ = "1.0.0"
