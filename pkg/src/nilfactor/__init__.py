"""Complete factorizations of finite nilpotent groups."""

from .errors import *  # noqa: F401,F403
from .factorize import (
    CompleteFactorization,
    ConstructionTrace,
    VerifyReport,
    build_blocks_from_chain,
    construct_complete_factorization,
    verify_complete_factorization,
    verify_factorization,
)
from .group import (
    ElementSet,
    GroupTable,
    Subgroup,
    element_order,
    generated_subgroup,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_from_permutations,
    make_from_table,
    make_heisenberg,
    make_quaternion,
    multiply_sets,
    normalizer,
    right_transversal,
)
from .groupspec import parse_group_spec
from .search import SearchOutcome, SearchProblem, Status, cross_check, search_complete_factorization
from .structure import (
    SubgroupChain,
    SylowDecomposition,
    is_nilpotent,
    p_group_chain,
    prime_factorize,
    subgroup_chain_for_orders,
    sylow_decomposition,
)

__version__ = "0.1.0"
