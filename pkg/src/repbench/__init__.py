"""GF(2) workbench for symmetric-group permutation modules and orbit counting.

Subpackages by topic:

- ``gf2``        bit-packed linear algebra over the two-element field
- ``partitions`` partition combinatorics, rim symbols, sign-twist involution
- ``symgrp``     permutations, conjugacy classes, small-group brute force
- ``permmod``    subset permutation modules, incidence maps, Specht bases
- ``modstruct``  hom spaces, commutant dimensions, socle series, chop
- ``orbits``     orbit statistics for subset / block-partition embeddings
- ``classical``  rank-3 actions of classical groups over small fields
- ``cli``        command-line front end and the verification manifest
"""

__version__ = "0.1.0"
