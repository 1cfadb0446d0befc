"""
Initialize the Einstein-Hilbert model
"""

# Internal identifier for this model
MODEL = "einstein_hilbert"
NAME = "Einstein-Hilbert"
