"""Graph-symmetry toolkit for automorphism groups, fixing numbers and minimal graphs of small groups."""

__version__ = "0.1.0"
