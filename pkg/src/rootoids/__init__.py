"""Workbench for finite groupoids with Boolean-ring-valued cocycles.

Builds protorootoids from groups, graphs, Coxeter matrices and meshes;
computes weak orders and the verdict hierarchy; extracts braid
presentations; detects squares and cubes; constructs normalizer and
functor groupoids; and embeds weak orders in ortholattices.
"""

__version__ = "0.1.0"
