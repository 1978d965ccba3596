"""Preemptive solvers for jobs with release/due windows.

Unit consumptions reduce to a min-cost flow over the window breakpoints; at
level 2 with consumptions one and two the problem is a small linear program.
Both yield per-interval amounts that an interval-packing pass turns into an
explicit preemptive schedule; covered work of the extracted schedule equals
the flow/LP objective exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

from .model import (
    InfeasibleError,
    InstanceError,
    PreemptiveSchedule,
    clamp_consumptions,
)
from .flow import MinCostFlow
from .simplex import LpModel, lp_solve


@dataclass(frozen=True)
class Timeline:
    """Sorted breakpoints of all release/due dates; span k is
    [points[k], points[k+1]), and kappa[i] lists the spans inside job i's window."""

    points: tuple
    kappa: tuple

    @property
    def spans(self):
        return tuple(zip(self.points, self.points[1:]))

    def length(self, k):
        return self.points[k + 1] - self.points[k]


def build_timeline(instance):
    if instance.r is None or instance.d is None:
        raise InstanceError("timeline requires release and due dates")
    points = tuple(sorted(set(instance.r) | set(instance.d)))
    kappa = []
    for i in instance.jobs():
        kappa.append(
            tuple(
                k
                for k in range(len(points) - 1)
                if instance.r[i] <= points[k] and points[k + 1] <= instance.d[i]
            )
        )
    return Timeline(points, tuple(kappa))


def _check_windows(instance):
    for i in instance.jobs():
        if instance.p[i] > instance.d[i] - instance.r[i]:
            raise InfeasibleError(
                f"job {i} does not fit its window [{instance.r[i]}, {instance.d[i]}]"
            )


@dataclass(frozen=True)
class FlowModel:
    """Min-cost-flow formulation for unit consumptions.

    Arcs: source->job (capacity p_i), job->span (capacity span length),
    span->sink under the level (capacity L*length, cost 0) and over the level
    (unbounded, cost 1).  A min-cost flow of value sum(p) prices exactly the
    work that cannot fit under the level.
    """

    timeline: Timeline
    solver: MinCostFlow
    source: int
    sink: int
    supply: int
    assign: dict
    under: dict
    over: dict


def build_flow_network(instance):
    if not all(ci == 1 for ci in instance.c):
        raise InstanceError("flow solver requires unit consumptions")
    _check_windows(instance)
    tl = build_timeline(instance)
    spans = len(tl.points) - 1
    n = instance.n
    source = n + spans
    sink = n + spans + 1
    mcf = MinCostFlow(n + spans + 2)
    supply = sum(instance.p)
    assign = {}
    for i in instance.jobs():
        mcf.add_edge(source, i, instance.p[i], 0)
        for k in tl.kappa[i]:
            assign[(i, k)] = mcf.add_edge(i, n + k, tl.length(k), 0)
    under = {}
    over = {}
    for k in range(spans):
        under[k] = mcf.add_edge(n + k, sink, instance.L * tl.length(k), 0)
        over[k] = mcf.add_edge(n + k, sink, supply, 1)
    return FlowModel(tl, mcf, source, sink, supply, assign, under, over)


def min_cost_flow(model):
    """Solve the network; returns (cost, {(job, span): amount})."""
    flow, cost = model.solver.solve(model.source, model.sink, model.supply)
    if flow != model.supply:
        raise InfeasibleError("flow solver failed to place all processing time")
    amounts = {
        key: model.solver.flow_on(handle) for key, handle in model.assign.items()
    }
    return cost, amounts


def interval_scheduling(jobs, amounts, start, end):
    """Pack per-job amounts into [start, end) line by line, left to right,
    wrapping to a new line when the end is reached.

    A wrapped job gets two pieces; nothing overlaps itself.  Returns
    {job: [(from, to), ...]} with exact endpoints.
    """
    width = Fraction(end) - Fraction(start)
    t = Fraction(0)
    out = {}
    for i in jobs:
        amount = Fraction(amounts[i])
        if amount < 0 or amount > width:
            raise InstanceError(f"amount for job {i} exceeds the interval length")
        if amount == 0:
            out[i] = []
            continue
        if t == width:
            t = Fraction(0)
        t2 = t + amount
        if t2 <= width:
            out[i] = [(start + t, start + t2)]
        else:
            t2 -= width
            out[i] = [(start, start + t2), (start + t, end)]
        t = t2
    return out


def solve_unit_pmtn(instance):
    """Optimal preemptive leveling with unit consumptions and windows.

    Returns (covered work, schedule).  With integer data the flow is integral,
    so all interval endpoints are integers.
    """
    model = build_flow_network(instance)
    cost, amounts = min_cost_flow(model)
    value = sum(instance.p) - cost
    pieces = {i: [] for i in instance.jobs()}
    tl = model.timeline
    for k in range(len(tl.points) - 1):
        members = [i for i in instance.jobs() if (i, k) in amounts and amounts[(i, k)] > 0]
        packed = interval_scheduling(
            members,
            {i: amounts[(i, k)] for i in members},
            tl.points[k],
            tl.points[k + 1],
        )
        for i, chunks in packed.items():
            pieces[i].extend(chunks)
    sched = PreemptiveSchedule(tuple(_merge(pieces[i]) for i in instance.jobs()))
    return value, sched


def _merge(chunks):
    chunks = sorted(chunks)
    out = []
    for a, b in chunks:
        if out and out[-1][1] == a:
            out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def build_l2_pmtn_model(instance):
    """Linear program for level 2 with consumptions in {1, 2} and windows.

    Variables are the per-span amounts of each job that fit under the level;
    double-consumption work blocks the span for singles (per-variable and
    aggregated rows), and doubles themselves cannot overlap within a span.
    """
    if instance.L != 2:
        raise InstanceError("this model requires level 2")
    _check_windows(instance)
    inst = clamp_consumptions(instance)
    tl = build_timeline(inst)
    spans = len(tl.points) - 1
    singles = [i for i in inst.jobs() if inst.c[i] == 1]
    doubles = [i for i in inst.jobs() if inst.c[i] == 2]

    labels = []
    objective = []
    for i in singles:
        for k in tl.kappa[i]:
            labels.append(("1", i, k))
            objective.append(1)
    for i in doubles:
        for k in tl.kappa[i]:
            labels.append(("2", i, k))
            objective.append(2)
    col = {label: idx for idx, label in enumerate(labels)}
    nv = len(labels)

    rows = []

    def row(coeffs, bound):
        dense = [0] * nv
        for label, coeff in coeffs:
            dense[col[label]] = coeff
        rows.append((tuple(dense), bound))

    for i in singles:
        row([(("1", i, k), 1) for k in tl.kappa[i]], inst.p[i])
    for i in doubles:
        row([(("2", i, k), 1) for k in tl.kappa[i]], inst.p[i])
    for k in range(spans):
        span_singles = [i for i in singles if k in tl.kappa[i]]
        span_doubles = [i for i in doubles if k in tl.kappa[i]]
        for i in span_singles:
            row(
                [(("1", i, k), 1)] + [(("2", j, k), 1) for j in span_doubles],
                tl.length(k),
            )
        if span_singles:
            row(
                [(("1", i, k), 1) for i in span_singles]
                + [(("2", j, k), 2) for j in span_doubles],
                2 * tl.length(k),
            )
        if span_doubles:
            row([(("2", j, k), 1) for j in span_doubles], tl.length(k))
    return LpModel(tuple(objective), tuple(rows), tuple(labels)), tl


def solve_l2_pmtn(instance):
    """Optimal preemptive leveling at level 2 (consumptions clamp to {0,1,2}).

    Under-level amounts come from the linear program; each span packs the
    double-consumption pieces first, then the single pieces around them, and
    every job's leftover processing fills the earliest free room of its own
    window (it only ever sits above the level, so the value is unchanged).
    Returns (covered work as an exact Fraction, schedule).
    """
    model, tl = build_l2_pmtn_model(instance)
    value, amounts = lp_solve(model)
    inst = clamp_consumptions(instance)
    singles = [i for i in inst.jobs() if inst.c[i] == 1]
    doubles = [i for i in inst.jobs() if inst.c[i] == 2]
    pieces = {i: [] for i in inst.jobs()}
    for k in range(len(tl.points) - 1):
        lo = Fraction(tl.points[k])
        hi = Fraction(tl.points[k + 1])
        t = lo
        for j in doubles:
            if k not in tl.kappa[j]:
                continue
            amount = amounts[("2", j, k)]
            if amount > 0:
                pieces[j].append((t, t + amount))
                t += amount
        members = [
            i for i in singles if k in tl.kappa[i] and amounts[("1", i, k)] > 0
        ]
        if members:
            packed = interval_scheduling(
                members, {i: amounts[("1", i, k)] for i in members}, t, hi
            )
            for i, chunks in packed.items():
                pieces[i].extend(chunks)
    for i in inst.jobs():
        placed = sum(b - a for a, b in pieces[i])
        _fill_leftover(pieces[i], inst.p[i] - placed, inst.r[i], inst.d[i])
    sched = PreemptiveSchedule(tuple(_merge(pieces[i]) for i in inst.jobs()))
    return value, sched


def _fill_leftover(chunks, leftover, lo, hi):
    """Greedy left-to-right placement of `leftover` units in the gaps of the
    job's own window; room always suffices because p <= d - r."""
    if leftover < 0:
        raise AssertionError("job over-assigned by the optimizer")
    if leftover == 0:
        return
    chunks.sort()
    cursor = Fraction(lo)
    gaps = []
    for a, b in list(chunks):
        if cursor < a:
            gaps.append((cursor, a))
        cursor = max(cursor, b)
    if cursor < hi:
        gaps.append((cursor, Fraction(hi)))
    for a, b in gaps:
        if leftover <= 0:
            break
        take = min(leftover, b - a)
        chunks.append((a, a + take))
        leftover -= take
    if leftover > 0:
        raise AssertionError("window too small for leftover processing")
