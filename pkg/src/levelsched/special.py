"""Non-preemptive special cases: in-tree leveling of unit jobs for any level,
level-1 sequencing under precedence, the level-2 subset-sum construction for
free jobs, and two one-line trivial cases.
"""

from .model import (
    InfeasibleError,
    InstanceError,
    Schedule,
    clamp_consumptions,
    under_level_work,
)
from .graphs import (
    is_in_tree,
    is_uet,
    is_unit_consumption,
    latest_starts,
    predecessors,
    topological_order,
)


def uet_in_tree_leveling(instance, M):
    """Optimal leveling of unit jobs on an in-forest under deadline M.

    List algorithm by lowest latest-start first: each step takes up to L ready
    jobs, then force-adds every job whose latest start is the current step
    (which may push the step above the level).
    """
    if not is_uet(instance) or not is_unit_consumption(instance):
        raise InstanceError("in-tree leveling requires unit durations and consumptions")
    if not is_in_tree(instance):
        raise InstanceError("precedence graph is not an in-tree (a job has two successors)")
    late = latest_starts(instance, M)
    pred = predecessors(instance)
    remaining = set(instance.jobs())
    x = [0] * instance.n
    for tau in range(M):
        if not remaining:
            break
        leaves = sorted(
            (i for i in remaining if all(q not in remaining for q in pred[i])),
            key=lambda i: (late[i], i),
        )
        chosen = set(leaves[: instance.L])
        forced = {i for i in remaining if late[i] == tau}
        if not forced <= set(leaves):
            raise AssertionError("a job reached its latest start before becoming ready")
        chosen |= forced
        for i in chosen:
            x[i] = tau
        remaining -= chosen
    if remaining:
        raise AssertionError("jobs left unscheduled at the deadline")
    return Schedule(tuple(x))


def unit_resource_leveling(instance, M):
    """Optimal leveling at level 1 with positive consumptions: schedule jobs
    consecutively in topological order, capping each start at its latest one.

    The covered work always reaches min(total duration, M).
    """
    if instance.L != 1:
        raise InstanceError("sequencing solver requires level 1")
    if any(ci <= 0 for ci in instance.c):
        raise InstanceError("sequencing solver requires positive consumptions")
    late = latest_starts(instance, M)
    order = topological_order(instance)
    x = [0] * instance.n
    elapsed = 0
    for i in order:
        x[i] = min(elapsed, late[i])
        elapsed += instance.p[i]
    return Schedule(tuple(x))


def subset_sum_table(values):
    """Reachability rows as bitmasks: bit b of row k set iff some subset of the
    first k values sums to b."""
    rows = [1]
    for v in values:
        rows.append(rows[-1] | (rows[-1] << v))
    return rows


def recover_subset(values, rows, b):
    """Indices of a subset summing to b, preferring to drop later values
    (yields the lexicographically smallest witness)."""
    chosen = []
    for k in range(len(values), 0, -1):
        if (rows[k - 1] >> b) & 1:
            continue
        chosen.append(k - 1)
        b -= values[k - 1]
    if b != 0:
        raise AssertionError("subset-sum recovery failed")
    return sorted(chosen)


def _chain_then_latest(jobs, durations, start, M, x):
    """Place jobs one after another from `start` while they fit before M, and
    at their latest start M - p afterwards."""
    t = start
    for i in jobs:
        if t + durations[i] <= M:
            x[i] = t
            t += durations[i]
        else:
            x[i] = M - durations[i]


def dp_l2_cmax(instance, M):
    """Optimal leveling at level 2 for free jobs (no precedence, no dates).

    Consumptions clamp to {0,1,2}.  If double-consumption work covers the
    horizon, chaining it is optimal; otherwise a subset-sum split of the
    single-consumption durations into two lanes maximizes the cover.
    Returns (optimal value, witness schedule).
    """
    if instance.L != 2:
        raise InstanceError("subset-sum solver requires level 2")
    if instance.arcs or instance.r is not None or instance.d is not None:
        raise InstanceError("subset-sum solver requires free jobs")
    if any(pi > M for pi in instance.p):
        raise InfeasibleError(f"a job is longer than the deadline {M}")
    inst = clamp_consumptions(instance)
    singles = [i for i in inst.jobs() if inst.c[i] == 1]
    doubles = [i for i in inst.jobs() if inst.c[i] == 2]
    ignored = [i for i in inst.jobs() if inst.c[i] == 0]
    p2 = sum(inst.p[i] for i in doubles)
    x = [0] * inst.n
    for i in ignored:
        x[i] = M - inst.p[i]

    if p2 >= M:
        _chain_then_latest(doubles, inst.p, 0, M, x)
        for i in singles:
            x[i] = M - inst.p[i]
        best = 2 * M
    else:
        cap = M - p2
        durations = [inst.p[i] for i in singles]
        total1 = sum(durations)
        rows = subset_sum_table(durations)
        best_b = None
        best_split = -1
        b = 0
        mask = rows[-1]
        while mask:
            if mask & 1:
                value = min(b, cap) + min(total1 - b, cap)
                if value > best_split:
                    best_split, best_b = value, b
            mask >>= 1
            b += 1
        chosen = recover_subset(durations, rows, best_b)
        lane_a = [singles[k] for k in chosen]
        lane_b = [singles[k] for k in range(len(singles)) if k not in set(chosen)]
        _chain_then_latest(doubles, inst.p, 0, M, x)
        _chain_then_latest(lane_a, inst.p, p2, M, x)
        _chain_then_latest(lane_b, inst.p, p2, M, x)
        best = 2 * p2 + best_split

    sched = Schedule(tuple(x))
    if any(x[i] + instance.p[i] > M for i in instance.jobs()):
        raise AssertionError("construction exceeded the deadline")
    if under_level_work(instance, sched) != best:
        raise AssertionError("constructed schedule misses the computed optimum")
    return best, sched


def trivial_l1_cmax(instance, M):
    """Level 1, free jobs: chain consuming jobs while they fit before M; all
    remaining jobs go to their latest start."""
    if instance.L != 1:
        raise InstanceError("trivial solver requires level 1")
    if instance.arcs or instance.r is not None or instance.d is not None:
        raise InstanceError("trivial solver requires free jobs")
    if any(pi > M for pi in instance.p):
        raise InfeasibleError(f"a job is longer than the deadline {M}")
    x = [0] * instance.n
    t = 0
    for i in instance.jobs():
        if instance.c[i] > 0 and t + instance.p[i] <= M:
            x[i] = t
            t += instance.p[i]
        else:
            x[i] = M - instance.p[i]
    return Schedule(tuple(x))


def trivial_unit_unit(instance, M):
    """Unit jobs, unit consumptions, free: one job per step, wrapping at M."""
    if not is_uet(instance) or not is_unit_consumption(instance):
        raise InstanceError("trivial solver requires unit durations and consumptions")
    if instance.arcs or instance.r is not None or instance.d is not None:
        raise InstanceError("trivial solver requires free jobs")
    return Schedule(tuple(i % M for i in instance.jobs()))


def in_tree_optimum_structure(instance, M, schedule):
    """Structural facts of an in-tree leveling schedule, for verification.

    Returns the list of overflowing steps; for the last one tau (if any) the
    produced value must equal (tau+1)*L + #{jobs with latest start > tau}.
    """
    late = latest_starts(instance, M)
    counts = {}
    for i in instance.jobs():
        counts[schedule.x[i]] = counts.get(schedule.x[i], 0) + 1
    over = sorted(t for t, k in counts.items() if k > instance.L)
    facts = {"overflow_steps": over}
    if over:
        tau = over[-1]
        facts["bound"] = (tau + 1) * instance.L + sum(1 for i in instance.jobs() if late[i] > tau)
    return facts
