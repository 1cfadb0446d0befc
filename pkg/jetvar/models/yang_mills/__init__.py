"""
Initialize the Yang-Mills (flat) model
"""

# Internal identifier for this model
MODEL = "yang_mills"
NAME = "Yang-Mills (flat)"
