"""Cluster seeds, exact torus mutation maps, quantum torus calculus,
quantum logarithm/dilogarithm quadrature, Heisenberg grid operators and the
unitary mutation intertwiner."""

from .seeds import (
    Seed,
    SeedError,
    new_seed,
    mutate_seed,
    apply_symmetry,
    relabel_seed,
    chiral_dual,
    langlands_dual,
    seed_to_json,
    seed_from_json,
)
from .tori import (
    RationalExpr,
    CoordinateMap,
    WordError,
    mutate_x_map,
    mutate_a_map,
    projection_p,
    compose_word,
    is_trivial_word,
    eval_positive,
)
from .qtorus import (
    TPoly,
    QTElem,
    FactoredQTElem,
    qt_mul,
    qt_star,
    quantum_mutation_image,
    check_quantum_involution,
    duality_image,
    check_duality_commutes_with_mutation,
    bimodule_act,
)
from .qlog import (
    QuadratureConfig,
    ComplexValue,
    phi,
    Phi,
    log_Phi,
    li2,
    property_residual,
)
from .grid import (
    GridAxis,
    GridSpec,
    GridFunction,
    inner_product,
    norm,
    apply_xhat,
    apply_phi_of_xhat,
    kappa_apply,
)
from .intertwiner import (
    KernelSpec,
    kernel_G_hat,
    kernel_G,
    apply_K,
    intertwining_residual,
    pde_residual,
    adjudicate_conventions,
)

__version__ = "0.1.0"
