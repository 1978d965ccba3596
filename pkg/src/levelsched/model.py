"""Core data model: instances, schedules, objective evaluation and JSON formats.

An instance is a set of jobs with integer durations and resource consumptions,
an optional precedence DAG, optional release/due dates, a resource level L and
an optional makespan deadline M.  The objective maximized throughout the
package is the amount of work that fits under the level:

    under_level_work(x) = sum over time steps of min(L, load at step)

All arithmetic is exact: integers for non-preemptive schedules, Fractions for
preemptive ones.
"""

import json
from dataclasses import dataclass
from fractions import Fraction


class InstanceError(ValueError):
    """Malformed instance data or invalid operation input."""


class InfeasibleError(Exception):
    """No feasible schedule exists for the requested parameters."""


class SearchSpaceError(Exception):
    """An exhaustive search would exceed its size guard."""


def _as_int_tuple(name, values, minimum):
    out = []
    for idx, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InstanceError(f"field '{name}': expected integer at index {idx}, got {v!r}")
        if v < minimum:
            raise InstanceError(f"field '{name}': value {v} at index {idx} is below {minimum}")
        out.append(v)
    return tuple(out)


def _check_acyclic(n, arcs):
    succs = [[] for _ in range(n)]
    indeg = [0] * n
    for i, j in arcs:
        succs[i].append(j)
        indeg[j] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        for j in succs[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if seen != n:
        cycle = sorted(i for i in range(n) if indeg[i] > 0)
        raise InstanceError(f"precedence cycle involving jobs {cycle}")


@dataclass(frozen=True)
class Instance:
    """An immutable leveling instance.

    p     duration per job (positive integers)
    c     resource consumption per job (nonnegative integers)
    L     resource level (>= 1)
    arcs  precedence pairs (i, j): i must finish before j starts
    r     optional release date per job
    d     optional due date per job (job must finish by d[i])
    M     optional makespan deadline
    """

    p: tuple
    c: tuple
    L: int
    arcs: tuple = ()
    r: tuple = None
    d: tuple = None
    M: int = None

    def __post_init__(self):
        object.__setattr__(self, "p", _as_int_tuple("p", tuple(self.p), 1))
        n = len(self.p)
        object.__setattr__(self, "c", _as_int_tuple("c", tuple(self.c), 0))
        if len(self.c) != n:
            raise InstanceError(f"field 'c': expected {n} entries, got {len(self.c)}")
        if isinstance(self.L, bool) or not isinstance(self.L, int) or self.L < 1:
            raise InstanceError(f"field 'L': expected a positive integer, got {self.L!r}")
        arcs = []
        for pos, arc in enumerate(tuple(self.arcs)):
            arc = tuple(arc)
            if len(arc) != 2 or not all(isinstance(v, int) for v in arc):
                raise InstanceError(f"field 'arcs': entry {pos} is not a pair of job indices")
            i, j = arc
            if not (0 <= i < n and 0 <= j < n):
                raise InstanceError(f"field 'arcs': entry {pos} references unknown job ({i}, {j})")
            arcs.append((i, j))
        arcs = tuple(sorted(set(arcs)))
        object.__setattr__(self, "arcs", arcs)
        _check_acyclic(n, arcs)
        if self.r is not None:
            object.__setattr__(self, "r", _as_int_tuple("r", tuple(self.r), 0))
            if len(self.r) != n:
                raise InstanceError(f"field 'r': expected {n} entries, got {len(self.r)}")
        if self.d is not None:
            object.__setattr__(self, "d", _as_int_tuple("d", tuple(self.d), 1))
            if len(self.d) != n:
                raise InstanceError(f"field 'd': expected {n} entries, got {len(self.d)}")
        if self.r is not None and self.d is not None:
            for i in range(n):
                if self.r[i] + self.p[i] > self.d[i]:
                    raise InstanceError(
                        f"job {i}: release {self.r[i]} plus duration {self.p[i]}"
                        f" exceeds due date {self.d[i]}"
                    )
        if self.M is not None:
            if isinstance(self.M, bool) or not isinstance(self.M, int) or self.M < 1:
                raise InstanceError(f"field 'M': expected a positive integer, got {self.M!r}")

    @property
    def n(self):
        return len(self.p)

    def jobs(self):
        return range(self.n)


@dataclass(frozen=True)
class Schedule:
    """Integer start time per job."""

    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", _as_int_tuple("x", tuple(self.x), 0))


@dataclass(frozen=True)
class PreemptiveSchedule:
    """Per job, a list of disjoint half-open execution intervals with rational endpoints."""

    intervals: tuple

    def __post_init__(self):
        jobs = []
        for i, pieces in enumerate(tuple(self.intervals)):
            norm = []
            for piece in pieces:
                a, b = piece
                a, b = Fraction(a), Fraction(b)
                if b <= a:
                    raise InstanceError(f"job {i}: empty or reversed interval [{a}, {b})")
                norm.append((a, b))
            norm.sort()
            for (a1, b1), (a2, _) in zip(norm, norm[1:]):
                if a2 < b1:
                    raise InstanceError(f"job {i}: overlapping intervals at {a2}")
            jobs.append(tuple(norm))
        object.__setattr__(self, "intervals", tuple(jobs))


def makespan(instance, schedule):
    """Latest finish time of any job (0 for an empty instance)."""
    if instance.n == 0:
        return 0
    return max(schedule.x[i] + instance.p[i] for i in instance.jobs())


def resource_profile(instance, schedule):
    """Total consumption per time step, for steps 0 .. makespan-1 (idle steps map to 0)."""
    _check_length(instance, schedule)
    end = makespan(instance, schedule)
    usage = {tau: 0 for tau in range(end)}
    for i in instance.jobs():
        for tau in range(schedule.x[i], schedule.x[i] + instance.p[i]):
            usage[tau] += instance.c[i]
    return usage


def _check_length(instance, schedule):
    if len(schedule.x) != instance.n:
        raise InstanceError(
            f"schedule has {len(schedule.x)} start times for {instance.n} jobs"
        )


def under_level_work(instance, schedule):
    """Total work fitting under the level: sum per step of min(L, load).

    Defined for any start-time vector; feasibility is checked separately so
    callers may score infeasible or partial schedules.
    """
    _check_length(instance, schedule)
    delta = {}
    for i in instance.jobs():
        if instance.c[i] == 0:
            continue
        s, e = schedule.x[i], schedule.x[i] + instance.p[i]
        delta[s] = delta.get(s, 0) + instance.c[i]
        delta[e] = delta.get(e, 0) - instance.c[i]
    total = 0
    load = 0
    prev = None
    for t in sorted(delta):
        if prev is not None and load:
            total += min(instance.L, load) * (t - prev)
        load += delta[t]
        prev = t
    return total


def under_level_work_preemptive(instance, schedule):
    """Exact rational value of the integral of min(L, load) over time."""
    if len(schedule.intervals) != instance.n:
        raise InstanceError(
            f"schedule covers {len(schedule.intervals)} jobs for {instance.n} jobs"
        )
    delta = {}
    for i in instance.jobs():
        if instance.c[i] == 0:
            continue
        for a, b in schedule.intervals[i]:
            delta[a] = delta.get(a, 0) + instance.c[i]
            delta[b] = delta.get(b, 0) - instance.c[i]
    total = Fraction(0)
    load = 0
    prev = None
    for t in sorted(delta):
        if prev is not None and load:
            total += min(instance.L, load) * (t - prev)
        load += delta[t]
        prev = t
    return total


def check_feasible(instance, schedule):
    """List of constraint violations; empty iff the schedule is feasible.

    Violations are data, not errors: each is a tuple naming the constraint and
    the jobs involved, e.g. ("precedence", i, j) or ("deadline", i).
    """
    if len(schedule.x) != instance.n:
        return [("job-count", len(schedule.x), instance.n)]
    out = []
    x, p = schedule.x, instance.p
    for i, j in instance.arcs:
        if x[i] + p[i] > x[j]:
            out.append(("precedence", i, j))
    if instance.M is not None:
        for i in instance.jobs():
            if x[i] + p[i] > instance.M:
                out.append(("deadline", i))
    if instance.r is not None:
        for i in instance.jobs():
            if x[i] < instance.r[i]:
                out.append(("release", i))
    if instance.d is not None:
        for i in instance.jobs():
            if x[i] + p[i] > instance.d[i]:
                out.append(("due", i))
    return out


def clamp_consumptions(instance):
    """Replace each c_i by min(c_i, L); leaves under_level_work unchanged."""
    return Instance(
        p=instance.p,
        c=tuple(min(ci, instance.L) for ci in instance.c),
        L=instance.L,
        arcs=instance.arcs,
        r=instance.r,
        d=instance.d,
        M=instance.M,
    )


# ---------------------------------------------------------------------------
# JSON formats
#
# Instance document: {"p": [...], "c": [...], "L": int, "arcs": [[i,j],...]?,
#                     "r": [...]?, "d": [...]?, "M": int?}
# Schedule document: {"x": [...], "F": int}
# Preemptive document: {"intervals": [[[a_num,a_den,b_num,b_den], ...], ...]}
# ---------------------------------------------------------------------------

_INSTANCE_KEYS = {"p", "c", "L", "arcs", "r", "d", "M"}


def _load_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(
            f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from exc
    return doc


def parse_instance(text):
    """Parse the canonical instance document; raises InstanceError with a diagnostic."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    unknown = sorted(set(doc) - _INSTANCE_KEYS)
    if unknown:
        raise InstanceError(f"unknown field(s): {', '.join(unknown)}")
    for key in ("p", "c", "L"):
        if key not in doc:
            raise InstanceError(f"missing required field '{key}'")
    for key in ("p", "c", "arcs", "r", "d"):
        if key in doc and doc[key] is not None and not isinstance(doc[key], list):
            raise InstanceError(f"field '{key}': expected a list")
    return Instance(
        p=doc["p"],
        c=doc["c"],
        L=doc["L"],
        arcs=tuple(map(tuple, doc.get("arcs") or ())),
        r=tuple(doc["r"]) if doc.get("r") is not None else None,
        d=tuple(doc["d"]) if doc.get("d") is not None else None,
        M=doc.get("M"),
    )


def serialize_instance(instance):
    """Canonical JSON for an instance; parse(serialize(I)) == I."""
    doc = {"p": list(instance.p), "c": list(instance.c), "L": instance.L}
    if instance.arcs:
        doc["arcs"] = [list(a) for a in instance.arcs]
    if instance.r is not None:
        doc["r"] = list(instance.r)
    if instance.d is not None:
        doc["d"] = list(instance.d)
    if instance.M is not None:
        doc["M"] = instance.M
    return json.dumps(doc)


def serialize_schedule(instance, schedule):
    return json.dumps({"x": list(schedule.x), "F": under_level_work(instance, schedule)})


def parse_schedule(text):
    doc = _load_json(text)
    if not isinstance(doc, dict) or "x" not in doc:
        raise InstanceError("schedule document must be an object with field 'x'")
    return Schedule(tuple(doc["x"]))


def serialize_preemptive_schedule(instance, schedule):
    rows = []
    for pieces in schedule.intervals:
        rows.append(
            [[a.numerator, a.denominator, b.numerator, b.denominator] for a, b in pieces]
        )
    value = under_level_work_preemptive(instance, schedule)
    return json.dumps(
        {"intervals": rows, "F": [value.numerator, value.denominator]}
    )


def parse_preemptive_schedule(text):
    doc = _load_json(text)
    if not isinstance(doc, dict) or "intervals" not in doc:
        raise InstanceError("document must be an object with field 'intervals'")
    jobs = []
    for row in doc["intervals"]:
        pieces = []
        for quad in row:
            if len(quad) != 4:
                raise InstanceError("each interval must be [a_num, a_den, b_num, b_den]")
            an, ad, bn, bd = quad
            pieces.append((Fraction(an, ad), Fraction(bn, bd)))
        jobs.append(tuple(pieces))
    return PreemptiveSchedule(tuple(jobs))
