"""kodual: a finite-structure duality workbench.

Ko-spaces, bi-dcpos and embedded bi-dcpos with their three-way
correspondence, the morphism calculus (c-relations and Galois morphisms),
the de Groot and Lawson self-dualities, and the local-compactness notions
(black triangle, bicontinuity, Hofmann-Mislove, Wilker, dirspaces), all at
exhaustively checkable finite scale.
"""

__version__ = "0.1.0"
