"""Graded attribute implications whose semantics is parameterized by a
finite monoid of isotone Galois connections over a finite residuated chain."""

from .errors import (
    CapExceeded,
    ChainNotClosed,
    ChainNotSymmetric,
    DegreeNotInChain,
    FaiError,
    GoalMismatch,
    InvalidHedge,
    InvalidStep,
    NotAdjoint,
    NotAMonoid,
    NotClosureSystem,
    NotComplete,
    NotProvable,
    ParseError,
    UniverseMismatch,
)
from .lattice import (
    LOGICS,
    Chain,
    DualPair,
    Hedge,
    globalization,
    identity_hedge,
    parse_degree,
    render_degree,
    validate_chain,
)
from .fset import (
    LSet,
    Universe,
    c_mult,
    c_shift,
    intersection,
    iter_lsets,
    leq,
    lset_count,
    parse_lset,
    render_lset,
    subsethood,
    union,
)
from .gconn import (
    Compose,
    Connection,
    ConstMult,
    ConstMultSet,
    DiffSet,
    Identity,
    Parameterization,
    Rotate,
    compose,
    connection_from_descriptor,
    derive_upper,
    from_hedge,
    generate_monoid,
    generators_from_descriptors,
    identity,
    term_to_descriptor,
    verify_adjoint,
)
from .semantics import (
    FAI,
    Theory,
    entail_degree,
    entails,
    hedge_truth_degree,
    holds_in,
    is_model,
    least_model,
    models_enum,
    parse_fai,
    parse_theory,
    render_fai,
    render_theory,
    t_step,
    theory_of_system,
    truth_degree,
)
from .context import (
    LContext,
    complete_set,
    down,
    downup,
    hasse_dot,
    holds_in_context,
    intents_enum,
    is_complete,
    minimize_sides,
    pseudo_intents,
    reduce_to_base,
    up,
)
from .proof import (
    ApplyF,
    Axiom,
    Cut,
    CutF,
    Hyp,
    Proof,
    ProofStep,
    check_proof,
    expand_theory,
    normalize_proof,
    proof_from_json,
    proof_to_json,
    provability_degree,
    prove,
)

__version__ = "0.1.0"
