"""
Initialize the Scalar field model
"""

# Internal identifier for this model
MODEL = "scalar"
NAME = "Scalar field"
