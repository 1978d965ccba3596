"""Constructive instance transformers tying leveling to machine scheduling.

A k-machine makespan question becomes a leveling question at level k with
unit consumptions: the machine instance fits in deadline M exactly when the
leveling optimum covers every unit of work.  Two further transformers trade
release/due windows for a full-horizon blocker job (level 1 to level 2) or
for zero-consumption guard chains (windows to precedence).
"""

from dataclasses import replace

from .model import Instance, InstanceError


def machine_to_leveling(instance, k, M):
    """Leveling twin of a k-machine makespan instance: level k, unit
    consumptions, deadline M; durations and constraints carry over."""
    if k < 1:
        raise InstanceError("machine count must be at least 1")
    return replace(instance, c=(1,) * instance.n, L=k, M=M)


def partition_into_machines(instance, schedule, k):
    """Split a schedule into k non-overlapping machine sequences by always
    assigning the next-starting job to the least loaded machine.

    Succeeds on every schedule whose covered work equals the total work;
    raises InstanceError when jobs overflow the machines.
    """
    lanes = [[] for _ in range(k)]
    finish = [0] * k
    for i in sorted(instance.jobs(), key=lambda i: (schedule.x[i], i)):
        lane = min(range(k), key=lambda l: (finish[l], l))
        if schedule.x[i] < finish[lane]:
            raise InstanceError(f"job {i} overlaps every machine at time {schedule.x[i]}")
        lanes[lane].append(i)
        finish[lane] = schedule.x[i] + instance.p[i]
    return lanes


def _window_horizon(instance):
    if instance.r is None or instance.d is None:
        raise InstanceError("transformer requires release and due dates")
    horizon = instance.M if instance.M is not None else max(instance.d)
    if max(instance.d) > horizon:
        raise InstanceError("due dates exceed the deadline horizon")
    return horizon


def lift_unit_window_to_l2(instance):
    """Embed a level-1 windowed instance at level 2 by adding one blocker job
    spanning the whole horizon; the optimum shifts up by exactly the horizon."""
    if instance.L != 1 or not all(ci == 1 for ci in instance.c):
        raise InstanceError("transformer requires level 1 and unit consumptions")
    horizon = _window_horizon(instance)
    return Instance(
        p=instance.p + (horizon,),
        c=instance.c + (1,),
        L=2,
        arcs=instance.arcs,
        r=instance.r + (0,),
        d=instance.d + (horizon,),
        M=horizon,
    )


def windows_to_chains(instance):
    """Replace release/due windows by zero-consumption guard chains under the
    same deadline; guards that would have zero duration are dropped (they
    constrain nothing).  The leveling optimum is preserved."""
    if instance.L != 1 or not all(ci == 1 for ci in instance.c):
        raise InstanceError("transformer requires level 1 and unit consumptions")
    horizon = _window_horizon(instance)
    p = list(instance.p)
    c = list(instance.c)
    arcs = list(instance.arcs)
    for i in range(instance.n):
        if instance.r[i] > 0:
            guard = len(p)
            p.append(instance.r[i])
            c.append(0)
            arcs.append((guard, i))
        if instance.d[i] < horizon:
            guard = len(p)
            p.append(horizon - instance.d[i])
            c.append(0)
            arcs.append((i, guard))
    return Instance(p=tuple(p), c=tuple(c), L=1, arcs=tuple(arcs), M=horizon)
