"""Two-machine scheduling of unit jobs under precedence.

Provides the classic label-and-list algorithm (optimal for two machines with
unit durations), the matching-based minimum-makespan value, and a repacking
helper that reschedules a job subset into a window at two jobs per step.
"""

from .model import InstanceError, Schedule
from .graphs import independence_graph, is_uet, transitive_closure
from .matching import max_matching_general


def _transitive_reduction(n, reach, jobs):
    """Immediate-successor lists on `jobs` after removing transitive arcs."""
    succ = {i: [] for i in jobs}
    members = set(jobs)
    for i in jobs:
        for j in jobs:
            if i == j or not (reach[i] >> j) & 1:
                continue
            if any(
                k != i and k != j and (reach[i] >> k) & 1 and (reach[k] >> j) & 1
                for k in members
            ):
                continue
            succ[i].append(j)
    return succ


def _label_order(jobs, succ):
    """Priority labels: repeatedly label the job whose labeled successor set is
    lexicographically smallest when sorted decreasingly; ties to smaller index."""
    label = {}
    unlabeled = set(jobs)
    for next_label in range(1, len(jobs) + 1):
        candidates = [
            i for i in unlabeled if all(j in label for j in succ[i])
        ]
        best = min(
            candidates,
            key=lambda i: (sorted((label[j] for j in succ[i]), reverse=True), i),
        )
        label[best] = next_label
        unlabeled.remove(best)
    return label


def _list_schedule(jobs, label, reach):
    """Greedy two-machine list schedule by decreasing label; returns step lists."""
    preds = {
        j: [i for i in jobs if i != j and (reach[i] >> j) & 1] for j in jobs
    }
    done_step = {}
    remaining = set(jobs)
    steps = []
    while remaining:
        t = len(steps)
        ready = [
            i
            for i in remaining
            if all(q in done_step and done_step[q] < t for q in preds[i])
        ]
        ready.sort(key=lambda i: (-label[i], i))
        chosen = ready[:2]
        if not chosen:
            raise InstanceError("list scheduling stalled; precedence data inconsistent")
        for i in chosen:
            done_step[i] = t
            remaining.remove(i)
        steps.append(sorted(chosen))
    return steps


def _pack_two_machines(instance, jobs):
    reach = transitive_closure(instance)
    succ = _transitive_reduction(instance.n, reach, jobs)
    label = _label_order(jobs, succ)
    return _list_schedule(jobs, label, reach)


def coffman_graham(instance):
    """Minimum-makespan two-machine schedule of a unit-duration instance."""
    if not is_uet(instance):
        raise InstanceError("two-machine scheduling requires unit durations")
    if instance.n == 0:
        return Schedule(())
    steps = _pack_two_machines(instance, list(instance.jobs()))
    x = [0] * instance.n
    for t, members in enumerate(steps):
        for i in members:
            x[i] = t
    return Schedule(tuple(x))


def fujii_min_makespan(instance):
    """Minimum two-machine makespan value: job count minus the maximum
    matching size among independent job pairs."""
    if not is_uet(instance):
        raise InstanceError("two-machine scheduling requires unit durations")
    return instance.n - len(max_matching_general(independence_graph(instance)))


def two_machine_reschedule(instance, jobs, window_start):
    """Pack `jobs` into consecutive steps from `window_start`, two per step,
    respecting precedence inside the subset.  Returns {job: start}."""
    jobs = sorted(jobs)
    if not jobs:
        return {}
    steps = _pack_two_machines(instance, jobs)
    out = {}
    for t, members in enumerate(steps):
        for i in members:
            out[i] = window_start + t
    return out
