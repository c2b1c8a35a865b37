"""Combinatorics of n-ordinals, pruned trees and symmetrisation of n-operads."""

__version__ = "0.1.0"
