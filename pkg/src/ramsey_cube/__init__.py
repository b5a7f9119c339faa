"""Extremal hypercube colourings, profile optimisation and labellings.

Submodules:
    patterns    the {0,1,*}^k algebra and subcube predicates
    matchings   perfect matchings of the cube and their symmetry classes
    colourings  coloured graphs, hypercube colourings, profile partitions
    structures  cycle search, connected matchings, edge-count bounds
    optimizer   the feasibility region, compressions, closed forms, oracles
    labelling   coloured multigraphs over a matching, admissible labellings
    cli         the ramsey-cube command-line tool
"""

__version__ = "0.1.0"
