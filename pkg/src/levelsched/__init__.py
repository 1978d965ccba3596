"""Exact solvers for single-resource leveling under a capacity level.

The objective maximized throughout is the amount of work fitting under the
level; every solver is exact and deterministic, and each has an independent
brute-force oracle for verification.
"""

from .model import (
    InfeasibleError,
    Instance,
    InstanceError,
    PreemptiveSchedule,
    Schedule,
    SearchSpaceError,
    check_feasible,
    clamp_consumptions,
    makespan,
    parse_instance,
    parse_preemptive_schedule,
    parse_schedule,
    resource_profile,
    serialize_instance,
    serialize_preemptive_schedule,
    serialize_schedule,
    under_level_work,
    under_level_work_preemptive,
)
from .graphs import (
    BipartiteGraph,
    Graph,
    bipartite_independence_graph,
    critical_path,
    earliest_starts,
    independence_graph,
    latest_starts,
    topological_order,
    transitive_closure,
)
from .matching import augment, augmenting_path, max_matching_bipartite, max_matching_general
from .two_machines import coffman_graham, fujii_min_makespan, two_machine_reschedule
from .level2 import (
    ValueProfile,
    apply_augmenting_sequence_min_makespan,
    apply_generalized_augmenting_sequence,
    earliest_schedule,
    elementary_operation,
    improve_at_min_makespan,
    one_job_elongation,
    solve as solve_uet_level2,
    two_job_elongation,
    value_profile,
)
from .special import (
    dp_l2_cmax,
    trivial_l1_cmax,
    trivial_unit_unit,
    uet_in_tree_leveling,
    unit_resource_leveling,
)
from .preemptive import (
    Timeline,
    build_flow_network,
    build_l2_pmtn_model,
    build_timeline,
    interval_scheduling,
    min_cost_flow,
    solve_l2_pmtn,
    solve_unit_pmtn,
)
from .reductions import (
    lift_unit_window_to_l2,
    machine_to_leveling,
    partition_into_machines,
    windows_to_chains,
)
from .oracle import brute_force_leveling, brute_force_matching, brute_force_pk_cmax
from .generate import generate

__all__ = [name for name in dir() if not name.startswith("_")]
