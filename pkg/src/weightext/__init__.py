"""Exact weight-extended branching graphs.

Graded graphs with Markov links, kappa-dimensions and edge weights, the
weight-extended graph and its translation action, coherent systems and their
power-scaling extensions, finite windows of the dimension group, and the
q-deformed Gelfand-Tsetlin example.  All arithmetic is exact over the
rationals.
"""

from .extension import (
    ONE,
    ExtTruncation,
    ExtVertex,
    GroupElement,
    ext_dim,
    ext_parents,
    extend,
    is_isomorphic_to_base,
    m_tilde,
    mu_tilde,
    translate,
)
from .graph import (
    ExplicitGraph,
    GraphError,
    GraphProvider,
    PascalGraph,
    Report,
    Truncation,
    Vertex,
    dim,
    full_levels,
    path_dim,
    truncate,
    validate,
)
from .harmonic import (
    CoherentSystem,
    ExtendedHarmonic,
    HarmonicError,
    binomial_system,
    check_extended,
    check_harmonic,
    from_extended,
    pullback,
    to_extended,
)
from .k0 import (
    K0Element,
    K0Error,
    K0Functional,
    K0Image,
    check_element,
    delta,
    embed_m_integer,
    embed_mu,
    equal_through,
    gamma_action,
    in_positive_cone,
    psi_eval,
    psi_from_state,
    psi_on_image,
)
from .link import (
    Link,
    LinkError,
    WeightSystem,
    kappa_dim,
    kappa_dim_oracle,
    link_from_weights,
    path_weight_sums,
    standard_link,
    validate_link,
    weight_system,
    weights,
)
from .rational import format_ratio, parse_ratio
from .uq import GTGraph, build_uq, gt_dim, interlaces, q_schur_principal, q_weight, uq_full

__version__ = "0.1.0"
