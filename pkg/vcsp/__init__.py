from .errors import (
    Error,
    InputError,
    ResourceError,
    PreconditionError,
    MalformedRationalError,
    ZeroDenominatorError,
    SchemaError,
    ArityMismatchError,
    UnknownElementError,
    SignatureMismatchError,
    BadParameterError,
    NotADecompositionError,
    NotADistributionError,
    ConstraintViolationError,
    UnreadableInputError,
    UnwritableOutputError,
    ResourceLimitError,
    PreconditionFailedError,
    NotACoreError,
    NoTighteningWitnessError,

    get_error_class,
    get_exit_status,
)

from .context import (
    Limits,
    Context,

    get_context,
)

from .extrat import (
    ExtRat,
    ZERO,
    ONE,
    INFINITY,

    sum_of,
)

from .structures import (
    Args,
    Symbol,
    Signature,
    Table,
    ValuedStructure,
    RelationalStructure,

    check_same_signature,
    pos,
    restrict,
    with_symbol,
    parse_structure,
    serialize_structure,
)

from .lp import (
    Relation,
    LpStatus,
    LinProgram,
    LpOutcome,

    solve,
    check_assignment,
    format_lp,
)

from .mappings import (
    Mapping,

    cost,
    identity,
    compose,
    image_of,
    is_surjective,
    opt_bruteforce,
    enumerate_finite_support,
    is_finite_support,
    find_finite_mapping,
    cheapest_finite_support,
    valued_isomorphic,
)

from .improvement import (
    IfhDistribution,
    IfhProgram,
    Validation,

    preimage_values,
    make_ifh_program,
    find_ifh,
    improves,
    equivalent,
    validate_ifh,
)

from .core import (
    CoreResult,
    CoreWeighting,

    is_core,
    is_core_witness,
    reduction_step,
    compute_core,
    image_structure,
    core_weighting,
    validate_core_weighting,
    core_treewidth_decide,
)

from .width import (
    TreeDecomposition,

    gaifman,
    scopes,
    eliminate,
    treewidth,
    twms,
    component_twms,
    overlap,
    find_overlap_pair,
    validate_decomposition,
)

from .sherali import (
    SAInstance,
    SASolution,
    TightnessCertificate,

    build_sa,
    opt_k,
    integral_solution,
    check_sa_solution,
    sa_tight_decide,
)

from .search import (
    FixStep,
    SearchOutcome,

    search_fix_loop,
    search_solve,
)


__version__ = "0.0.0"
