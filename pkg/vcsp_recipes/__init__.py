from .families import (
    gen_grid,
    gen_path,
    gen_diag_grid,
    gen_finite_variants,
    gen_crisp_clique,
    gen_two_triangles,
    gen_random,
)

from .paths import (
    PathDistribution,

    grid_path_ifh,
    psi,
)

from .gadgets import (
    GadgetParams,
    Gadget,

    gap_instance_treewidth,
    gap_instance_overlap,
)
