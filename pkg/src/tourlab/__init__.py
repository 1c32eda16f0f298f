"""tourlab: finite tournament algebra.

Tournaments, Q-invariant (module) structure, prime/order/base quotients,
classifier trees with canonical certificates, the doubling/attachment
constructions, group and dyadic game tournaments, and finite inverse systems.
"""

from .core import (
    CapExceededError,
    QuotientMap,
    Tournament,
    TournamentError,
    arc_in_3cycle,
    arc_tournament,
    automorphisms,
    enumerate_spanning_sets,
    find_isomorphism,
    initial_point,
    is_arc_cyclic,
    is_arc_cyclic_subset,
    is_irreducible,
    is_point_cyclic,
    is_quotient_map,
    is_regular,
    is_spanning_set,
    is_transitive,
    members,
    restrict,
    reverse,
    strong_components,
    terminal_point,
    three_cycle,
    transitive_order,
    trivial,
    vset,
)
from .modular import (
    ClassifierTree,
    base_quotient,
    certificate,
    classifier,
    has_arc_quotient,
    is_prime,
    is_q_invariant,
    max_order_quotient,
    maximal_invariant_sets,
    prime_quotient,
    q_closure,
    q_set,
    reassemble,
    smash,
)
from .construct import (
    AttachmentSpec,
    FiberAssignment,
    add_dominated_point,
    add_pair,
    attach,
    cyclic_game,
    double,
    generalized_reduced_double,
    irreducible_extension,
    lex_product,
    n1_interval,
    reduced_double,
    two_n0,
    two_n1,
    y2,
)
from .grouptour import (
    EpsilonWord,
    FiniteAbelianGroup,
    GameSubset,
    GroupHom,
    all_game_subsets,
    dyadic_arc,
    dyadic_restriction,
    h_epsilon,
    lift_game_subset,
    parse_group_spec,
    pjk_arc,
    pjk_interchange,
    pjk_truncation,
    pjk_twist,
    tournament_from_game,
    triadic_tournament,
    twist,
    validate_game_subset,
)
from .profinite import (
    InverseSystem,
    Thread,
    classifier_cross_check,
    cylinder_cycle_witness,
    lex_tower,
    limit_arc,
    validate_system,
)

__version__ = "0.1.0"
