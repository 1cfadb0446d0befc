"""
Initialize the Einstein-Yang-Mills model
"""

# Internal identifier for this model
MODEL = "einstein_yang_mills"
NAME = "Einstein-Yang-Mills"
