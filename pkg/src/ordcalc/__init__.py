"""Countable linear orders as symbolic terms: ordinals, exponentials,
condensations, cyclic-transitivity witnesses and the isomorphism
``(L,a)^alpha -> (L,b)^alpha`` for discrete unbounded cyclically transitive ``L``."""

from .condensation import (
    Condensation,
    condense_brute,
    condense_iterate,
    condense_step,
    condense_symbolic,
    ctlo_condense_transport,
    zeta_factorization,
)
from .cyclic import (
    CTLOWitness,
    CycEquivWitness,
    CyclicAutomorphism,
    build_witness,
    ctlo_from_cyclic,
    cyclic_automorphism_count,
    cyclic_from_ctlo,
    cyclic_r,
    inflationary_modify,
    transitive_finite_check,
    validate_cyc_equiv,
    validate_witness,
    witness_finite_rotation,
    witness_product_discrete,
    witness_product_left,
    witness_reverse,
    witness_translation,
    witness_transport,
)
from .errors import *  # noqa: F401,F403
from .expiso import (
    ExpIsoContext,
    embed,
    main_iso,
    main_iso_inverse,
    side,
    stage_f,
    stage_f_inverse,
    verify_exponentiable,
)
from .exponential import (
    FSFunction,
    fs_between,
    fs_compare,
    fs_make,
    fs_neighbors,
    iso_curry,
    iso_curry_inverse,
    iso_split_ordinal,
    iso_split_ordinal_inverse,
    iso_split_sum,
    iso_split_sum_inverse,
    locate_rem_rep,
    split_exponent,
)
from .laws import check_laws
from .linorder import (
    Eta,
    Fin,
    Omega,
    OmegaStar,
    OrdExp,
    OrderTerm,
    Prod,
    Rev,
    Sum,
    Zeta,
    back_and_forth,
    classify,
    compare,
    extremum,
    neighbors,
    reverse,
    sample,
)
from .ordinal import Ordinal, ord_add, ord_compare, ord_sub, split_limit_finite
from .syntax import format_term, parse_element, parse_ordinal, parse_term

__version__ = "0.1.0"
