"""
Built-in field models, one package per model
"""
