"""geosep: space-efficient bichromatic separability.

An array-implicit k-d tree with non-recursive O(1)-scratch construction and
orthogonal range counting/reporting, plus exact solvers for the largest
monochromatic rectangle (arbitrary orientation), the maximum-weight rectangle,
and the largest axis-parallel monochromatic cuboid in 3D, each validated
against independent brute-force oracles.
"""

from .geom import (BLUE, RED, Frame, InputError, PointSet, dominates,
                   frame_coords, make_points_2d, make_points_3d,
                   make_points_w2d, scale_factor)
from .kdtree import ImplicitKdTree, QueryScratch, block_params, subtree_size
from .lmr import solve_lmr, solve_lrr
from .lwr import WeightTree, solve_lwr
from .lmc import solve_lmc, solve_lrc

__all__ = [
    "BLUE", "RED", "Frame", "InputError", "PointSet", "dominates",
    "frame_coords", "make_points_2d", "make_points_3d", "make_points_w2d",
    "scale_factor", "ImplicitKdTree", "QueryScratch", "block_params",
    "subtree_size", "solve_lmr", "solve_lrr", "solve_lwr", "WeightTree",
    "solve_lmc", "solve_lrc",
]

__version__ = "0.1.0"
