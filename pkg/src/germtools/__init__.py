"""Exact invariants of corank-1 quasihomogeneous map germs (C^2,0) -> (C^3,0).

Double point curves, identification/fold branch structure, cross-cap and
triple-point counts, image multiplicity, transversal-slice data and the
Whitney-equisingularity criterion, all over exact rational arithmetic.
"""

__version__ = "0.1.0"
