"""Verification toolkit for a 6-pentachoron ideal triangulation and the
HNN presentation of its fundamental group.

The package certifies a specific chain of computations end to end:

* ``tri4``: parse and validate 4-dimensional gluing tables, build the
  face lattice, decide orientability, extract vertex links, enumerate
  combinatorial automorphisms and their fixed-point sets, and read off a
  fundamental-group presentation from the dual spine.
* ``presentations``: words, presentation text syntax, abelianization,
  and Tietze simplification with replayable traces.
* ``fingrp``: finite groups from coset enumeration, subgroups,
  homomorphisms, automorphisms, and the catalog of candidate base groups.
* ``grphom``: exact Smith normal form and bar-resolution group homology
  with representative cycles and induced maps.
* ``hnn``: ascending HNN extensions of finite groups with Britton
  normal forms, knot-group certificates, Mayer-Vietoris homology,
  satellite obstructions, and the outer automorphism computation.
* ``census``: exhaustive search over the base-group catalog for HNN data
  passing the knot-group certificate, up to equivalence.
* ``cli``: the ``hnnknot`` command with JSON reports.
"""

from . import fingrp, grphom, presentations

__all__ = [
    "fingrp",
    "grphom",
    "presentations",
]

__version__ = "1.0.0"
