"""Exact computation of gamma filtrations of representation rings of finite
abelian p-groups, graded presentation verification, and the K-theory
formal-group-law relation engine.

Subpackage map:

* ``exactlin``   - exact integer linear algebra (HNF, SNF, lattice quotients)
* ``grouprings`` - R(G), lambda/gamma operations, ideal powers, gr ground truth
* ``polys``      - integer polynomials in the graded variables y1..yn
* ``gradedpres`` - graded presentations and certified comparison against gr
* ``fgl``        - formal group law engine (p-series, reductions, certificates)
* ``cli``        - command line front end
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
