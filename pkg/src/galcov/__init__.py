"""Fundamental group of a Galois cover of CP^1 x T, mechanized at desk scale.

Pipeline: incidence combinatorics of the degenerated surface, regenerated
braid monodromy of the branch curve, complement-group presentations, the
sheet monodromy and its splitting, Reidemeister-Schreier kernel
presentations, and the Smith-normal-form / coset-enumeration certificates
that pin the kernel's abelianization to Z^(4n-2) against explicit model
groups.
"""

__version__ = "0.1.0"
