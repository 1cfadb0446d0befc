"""
Derivation commands; every module defines one DerivationProcessor
"""
