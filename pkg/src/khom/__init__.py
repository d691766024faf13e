"""Exact computation of homotopy Mackey functors of K-theoretic local
spheres for finite abelian groups."""

__version__ = "0.1.0"
