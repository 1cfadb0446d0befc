"""
jetvar: symbolic variational calculus on jet bundles
"""
__version__ = "1.0.0"
