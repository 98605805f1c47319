"""
Bundled instance and design fixtures, addressable as @name
"""
