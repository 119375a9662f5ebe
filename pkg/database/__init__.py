"""
Fixture catalogue: shipped graphs and diagrams with their known invariants.
"""
