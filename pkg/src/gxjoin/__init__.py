"""Generalized X-joins of Cayley graphs with verified regular-subgroup synthesis."""

from .config import Caps, DEFAULT_CAPS, caps_from_env, merge_caps
from .errors import (
    AsymmetricConnectionSet,
    ClosureCapExceeded,
    GeneratorsInsufficient,
    GxjoinError,
    IdentityInConnectionSet,
    InvalidReps,
    LambdaNotEpimorphism,
    NotAHomomorphism,
    NotClosed,
    NotRegular,
    OrderCapExceeded,
    ScenarioError,
    SigmaNotPartition,
    SizeCapExceeded,
    SynthesisFailed,
    TableNotGroup,
    TheoremChoicesUnavailable,
    ThetaNotEpimorphism,
    VerificationFailed,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    centralizer,
    centralizing_transversal,
    cyclic,
    dihedral,
    direct_complement,
    direct_product,
    elementary_abelian,
    group_from_spec,
    hom_from_images,
    kernel,
    quaternion8,
    right_coset_reps,
    subgroup_generated,
)
from .perms import (
    PartitionOfPoints,
    Perm,
    PermGroup,
    closure,
    group_isomorphic,
    is_block_system,
    is_regular,
    is_transitive,
    right_regular_action,
)
from .graphs import (
    Graph,
    VertexMap,
    automorphism_group,
    cayley_graph,
    graph_isomorphic,
    induced_subgraph,
    is_graph_epimorphism,
    is_vertex_transitive,
)
from .xjoin import (
    XJoinBlock,
    XJoinInput,
    generalized_xjoin,
    is_equitable,
    lexicographic_product,
)
from .gwp import (
    LiftChoice,
    Scaffold,
    build_scaffold,
    block_kernel_group,
    diagonal_kernel_group,
    gwp_group,
    lift,
    lift_hom_report,
    lift_obstruction,
    lift_search,
    regular_candidate,
    scaffold_report,
)
from .synth import (
    CayleyCertificate,
    CayleyScenario,
    HypothesisReport,
    build_w,
    certify_vertex_transitive,
    synthesize_cayley,
    validate_hypotheses,
    verify_aut_containment,
)

__version__ = "0.1.0"
