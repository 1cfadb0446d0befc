"""
Initialize the Maxwell (flat) model
"""

# Internal identifier for this model
MODEL = "maxwell"
NAME = "Maxwell (flat)"
