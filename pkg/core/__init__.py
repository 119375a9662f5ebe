"""
Core modules of the toolkit.
Includes polynomial arithmetic, signed bipartite graphs, interior and signed
interior polynomials, Ehrhart counting, link diagrams and HOMFLY evaluation.
"""

__version__ = "0.1.0"
