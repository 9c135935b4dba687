"""Finite-fragment workbench for topological Ramsey spaces.

Concrete data structures for the finite approximations of the Ellentuck
space, the block-tree space behind weakly Ramsey ultrafilters, the
square-block space, ordered clique-free graph classes and tensor-ideal
symbolic sets, together with exhaustive-search engines that verify the
axioms, partition theorems and canonization theorems at desk scale.

Everything infinite is truncated: members carry an explicit depth, and
operations whose classical statements quantify over infinite objects return
three-valued verdicts (holds / fails with witness / indeterminate at this
depth).  All searches are deterministic and all values immutable.
"""

from . import canonize, cli, core, ellentuck, graphs, hypercube, ideals, trees
from .core import (SpaceBinding, TruncatedMember, Depth, basic_open,
                   check_A4, check_axioms_A123, depth_of, almost_reduces)

__version__ = "0.1.0"

__all__ = [
    "canonize", "cli", "core", "ellentuck", "graphs", "hypercube", "ideals",
    "trees", "SpaceBinding", "TruncatedMember", "Depth", "basic_open",
    "check_A4", "check_axioms_A123", "depth_of", "almost_reduces",
]
