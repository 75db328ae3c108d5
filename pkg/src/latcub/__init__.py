"""Cubature formulas on spheres from shells of integral lattices.

Subpackages cover exact q-series arithmetic, a lattice catalog with shell
enumeration, modular-form generator spaces, Gegenbauer-kernel design
verification, finite matrix-group invariant theory, the shell-weight solvers,
and Linear-Programming-type lower bounds.
"""

__version__ = "0.1.0"
