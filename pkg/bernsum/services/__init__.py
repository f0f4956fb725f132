"""
Services package for the computations.
This package contains the combinatorial kernel, the moment engine, the distribution
catalogue, tail sums, generating functions and the oracles.
"""
