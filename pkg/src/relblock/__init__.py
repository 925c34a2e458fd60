"""Exact relative and absolute blockers on finite bounded posets.

The package covers antichain lattices, weight maps and blockers, the
Farey subsequences attached to Boolean lattices, three independent
counts of relatively r-blocking elements, and layer pruning.
"""

from .antichains import (
    Antichain,
    enumerate_antichains,
    join_filter,
    join_ideal,
    leq_filter,
    leq_ideal,
    meet_filter,
    meet_ideal,
)
from .blockers import (
    ATOM_COUNT,
    IDEAL_SIZE,
    MAX_RANK,
    WeightMap,
    absolute_blocker,
    atom_blocker,
    blocking_layer,
    blocking_subposet,
    committee_threshold,
    is_relatively_blocking,
    relative_blocker,
    validate_weight_map,
    weight_map,
)
from .clutter import Clutter, load_clutter, parse_clutter
from .enumeration import (
    count_all,
    count_brute,
    count_inclusion_exclusion,
    count_mobius,
    decompose_layers,
    nu,
    q_count_eq,
    q_count_geq,
)
from .errors import (
    CapabilityError,
    DomainError,
    HostMismatchError,
    HypothesisError,
    PosetError,
    RelBlockError,
    ResourceGuardError,
    SizeError,
)
from .farey import (
    FareySub,
    cardinality,
    farey_boolean,
    farey_full,
    farey_left,
    farey_poset,
    index_of,
    predecessor,
    successor,
)
from .layers import (
    assert_empty_layers,
    d_set,
    structure_farey_form,
    structure_ideal_form,
    threshold_fraction,
    threshold_index,
)
from .poset import BooleanLattice, Poset, boolean_lattice, load_poset, dump_poset, mobius

__version__ = "0.1.0"
