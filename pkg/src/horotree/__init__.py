"""Exact harmonic analysis on (q+1)-regular trees.

Rank-2 Weyl/root combinatorics, height-labeled homogeneous trees, adjacency
and radial operators, ray Eisenstein series with functional equation and
meromorphic continuation as exact rational-function data, and a function-field
brute-force cross-check for q prime.
"""

from .exactalg import (LaurentPoly, NoSolutionError, ParamSystem, PoleError,
                       RationalFunc, arith, dual_substitute, evaluate,
                       solve_param_system)
from .roots import (CartanMatrix, act, check_inversion_containment,
                    delta_re_stream, haar_index_exponent, inversion_set,
                    reduce_word, reflect, root_partition)
from .tree import (Horosphere, IwasawaLabel, Tree, build_tree, horosphere,
                   neighbor_labels, relabel, to_jsonl, verify_bruhat_iwasawa)
from .spectral import (adjacency_apply, constant_term, eigen_check, psi,
                       radial_apply, radial_eigenvalue, ray_adjacency_apply,
                       truncate_ray, weighted_l2_norm)
from .eisenstein import (EisensteinData, characteristic_roots, eisenstein_ray,
                         eisenstein_values, functional_equation_check, poles,
                         uniqueness_system_check)
from .oracle import (Matrix2, brute_eisenstein, compare_with_ray,
                     enumerate_cosets, lattice_ball, measure_scale,
                     orbit_height_bound, quotient_ray_check, vertex_of)

__version__ = "0.1.0"
