"""Strong-connectivity augmentation of plane oriented graphs and digraphs.

The central objects are plane digraphs given as rotation systems
(:mod:`orient_augment.plane_graph`); the entry points are the solvers in
:mod:`orient_augment.solvers` and the instance generators in
:mod:`orient_augment.pog_io` and :mod:`orient_augment.hardness`.
"""

from .plane_graph import Completion, PlaneDigraph, build, insert_arcs
from .pog_io import gen_random, parse_pog, write_pog
from .solvers import brute_solve, solve_directed, solve_oriented, verify_solution

__version__ = "0.1.0"

__all__ = [
    "Completion",
    "PlaneDigraph",
    "build",
    "insert_arcs",
    "gen_random",
    "parse_pog",
    "write_pog",
    "brute_solve",
    "solve_directed",
    "solve_oriented",
    "verify_solution",
]
