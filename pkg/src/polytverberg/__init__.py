"""Exact Tverberg-type searches on polytopes, with numerical sphere tools.

The exact part (rational LP, face lattices, witness searches) lives in
:mod:`.exact`, :mod:`.polytope`, :mod:`.tverberg` and :mod:`.algorithms`.
Floating-point geometry on spheres lives in :mod:`.complex`,
:mod:`.packing` and :mod:`.sphere_search`.
"""

from .algorithms import (
    ColoredConfig,
    D1Witness,
    TriangleFound,
    caratheodory_reduce,
    colorful_tverberg,
    cross_via_colorful,
    neighborly_construct,
    next_prime_in_gap,
    triangle_free_d1,
    validate_d1_witness,
)
from .complex import (
    BoundaryComplex,
    barycentric_subdivide,
    boundary_complex,
    face_diameter,
    subdivide_k,
    subdivision_decay_report,
)
from .exact import (
    DimensionError,
    LinSystem,
    affine_rank,
    conv_intersection_point,
    lp_feasible,
    relint_intersection_point,
)
from .generators import random_rational_points, seeded_rational_map, trial_seeds
from .packing import greedy_lambda_packing, packing_polytope, voronoi_diameter_check
from .polytope import (
    Polytope,
    all_proper_faces,
    faces_of_dim,
    facets_bruteforce,
    gale_evenness_facets,
    is_k_neighborly,
    is_triangle_free,
    make_cross,
    make_cube,
    make_cyclic,
    make_simplex,
    min_degree,
    skeleton,
)
from .sphere_search import (
    SmoothMap,
    StiefelFrame,
    gradient_check,
    orbit_points,
    random_smooth_map,
    residual,
    rotate_frame,
    solve_bu,
)
from .tverberg import (
    InvalidWitness,
    LinearMap,
    SearchParams,
    TverbergWitness,
    count_cross_witnesses,
    cross_bound,
    polytope_tverberg_search,
    tverberg_partition,
    validate_witness,
)

__version__ = "0.1.0"
