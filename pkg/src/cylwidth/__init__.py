"""Empirical certification of cylindrical-width machinery.

Subpackages cover the tail-weighted supremum norm, finite unitary groups
and orbits, Grassmannian measures built from delocalized dyadic blocks,
width estimation over signed-permutation images, lower-bound witnesses,
and the restricted-invertibility reduction from complex to real subspaces.
"""

__version__ = "0.1.0"
