"""monocone: exact computations with affine semigroups, monomial ideals,
rational sequence cones, and quasi-rational plane cones."""

__version__ = "0.1.0"
