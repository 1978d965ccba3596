"""Optimal leveling of unit jobs under precedence at resource level 2.

Core idea: with a deadline equal to the critical-path length, the covered
work of a schedule equals path length plus the number of doubled steps, and
doubled steps correspond to a matching between chain jobs and off-chain jobs
in the independence graph.  Augmenting that matching translates into concrete
schedule transformations (job translations, elongations, window repacks) that
raise the covered work by exactly one or two units per extra deadline step.
The optimal value as a function of the deadline is piecewise linear with at
most three segments; `solve` produces a witness schedule for any deadline.
"""

from collections import defaultdict
from dataclasses import dataclass, replace

from .model import (
    InfeasibleError,
    InstanceError,
    Schedule,
    check_feasible,
    makespan,
    under_level_work,
)
from .graphs import (
    bipartite_independence_graph,
    critical_path,
    earliest_starts,
    independence_graph,
    is_uet,
    is_unit_consumption,
    transitive_closure,
)
from .matching import augmenting_path, max_matching_bipartite, max_matching_general
from .two_machines import coffman_graham, two_machine_reschedule


@dataclass(frozen=True)
class ValueProfile:
    """Piecewise-linear optimal covered work as a function of the deadline.

    path_len        length of a longest chain (minimum feasible deadline)
    cross_matching  max matching size between chain jobs and the rest
    full_matching   max matching size over all independent pairs
    job_count       number of jobs (the eventual plateau value)
    """

    path_len: int
    cross_matching: int
    full_matching: int
    job_count: int

    def __post_init__(self):
        if not 0 <= self.cross_matching <= self.full_matching:
            raise AssertionError("matching sizes out of order")
        b1, b2 = self.breakpoints()
        if not self.path_len <= b1 <= b2:
            raise AssertionError("profile breakpoints out of order")

    def breakpoints(self):
        return (
            self.path_len + self.full_matching - self.cross_matching,
            self.job_count - self.full_matching,
        )

    def value(self, M):
        if M < self.path_len:
            raise InfeasibleError(f"deadline {M} below minimum makespan {self.path_len}")
        b1, b2 = self.breakpoints()
        if M <= b1:
            return 2 * (M - self.path_len) + self.path_len + self.cross_matching
        if M <= b2:
            return M + self.full_matching
        return self.job_count


def _check_uet_unit(instance):
    if not is_uet(instance):
        raise InstanceError("solver requires unit durations")
    if not is_unit_consumption(instance):
        raise InstanceError("solver requires unit resource consumptions")


def value_profile(instance):
    """Compute the profile parameters with the graph and matching kits."""
    _check_uet_unit(instance)
    path = critical_path(instance)
    full = len(max_matching_general(independence_graph(instance)))
    cross = len(max_matching_bipartite(bipartite_independence_graph(instance, path)))
    return ValueProfile(len(path), cross, full, instance.n)


def _steps_of(instance, schedule):
    """Map step -> sorted job list; schedules here never idle before makespan."""
    steps = defaultdict(list)
    for i in instance.jobs():
        steps[schedule.x[i]].append(i)
    out = {tau: sorted(jobs) for tau, jobs in steps.items()}
    end = makespan(instance, schedule)
    if instance.n and sorted(out) != list(range(end)):
        raise InstanceError("schedule has idle steps before its makespan")
    return out


def earliest_schedule(instance):
    """All jobs at their earliest precedence-feasible start."""
    return Schedule(tuple(earliest_starts(instance)))


# ---------------------------------------------------------------------------
# Deadline equal to the critical-path length
# ---------------------------------------------------------------------------

def elementary_operation(instance, schedule, a, b):
    """Pull the later of two independent jobs next to the solitary job `a`.

    Blocks of jobs tied to `b` by precedence cascade one anchor step towards
    `a`, then `b` lands on the freed anchor.  Covered work stays equal when
    exactly two jobs shared b's step and grows by one otherwise.
    """
    _check_uet_unit(instance)
    x = list(schedule.x)
    reach = transitive_closure(instance)
    pathlen = len(critical_path(instance))
    if makespan(instance, schedule) != pathlen:
        raise InstanceError("schedule makespan must equal the critical-path length")
    steps = _steps_of(instance, schedule)
    if a == b or (reach[a] >> b) & 1 or (reach[b] >> a) & 1:
        raise InstanceError(f"jobs {a} and {b} must be independent")
    if len(steps[x[a]]) != 1:
        raise InstanceError(f"job {a} must be the only job at its step")
    if x[a] == x[b]:
        raise InstanceError(f"jobs {a} and {b} must sit at different steps")

    before = under_level_work(instance, schedule)
    jobs_at_b = len(steps[x[b]])
    new_x = _translate(instance, reach, x, a, b)
    out = Schedule(tuple(new_x))
    expected = before if jobs_at_b == 2 else before + 1
    if under_level_work(instance, out) != expected:
        raise AssertionError("translation changed covered work unexpectedly")
    if check_feasible(instance, out) or makespan(instance, out) != pathlen:
        raise AssertionError("translation produced an infeasible schedule")
    return out


def _translate(instance, reach, x, a, b):
    if x[a] < x[b]:
        return _translate_forward(
            instance.n, x, a, b, lambda j: bool((reach[j] >> b) & 1)
        )
    top = max(x)
    mirrored = [top - xi for xi in x]
    result = _translate_forward(
        instance.n, mirrored, a, b, lambda j: bool((reach[b] >> j) & 1)
    )
    return [top - xi for xi in result]


def _translate_forward(n, x, a, b, blocked):
    anchors = sorted({x[j] for j in range(n) if blocked(j) and x[a] < x[j] < x[b]})
    targets = [x[a]] + anchors
    new_x = list(x)
    for k, tau in enumerate(anchors):
        for j in range(n):
            if x[j] == tau and blocked(j):
                new_x[j] = targets[k]
    new_x[b] = targets[-1]
    return new_x


def _seq_shape_ok(instance, reach, x, seq):
    if len(seq) < 2 or len(seq) % 2 != 0 or len(set(seq)) != len(seq):
        return False
    for u, v in zip(seq, seq[1:]):
        if (reach[u] >> v) & 1 or (reach[v] >> u) & 1:
            return False
    for q in range(1, len(seq) // 2):
        if x[seq[2 * q - 1]] != x[seq[2 * q]]:
            return False
    return True


def _lemma1_seq_ok(instance, reach, pathset, x, counts, seq):
    if not _seq_shape_ok(instance, reach, x, seq):
        return False
    if any(seq[i] not in pathset for i in range(0, len(seq), 2)):
        return False
    if any(seq[i] in pathset for i in range(1, len(seq), 2)):
        return False
    return counts[x[seq[0]]] == 1 and counts[x[seq[-1]]] >= 3


def _derive_min_makespan_path(instance, schedule, path):
    """Berge path in the chain/off-chain independence graph, oriented to start
    on the chain side, for the matching induced by co-scheduled pairs."""
    steps = _steps_of(instance, schedule)
    pathset = set(path)
    mu = set()
    for jobs in steps.values():
        chain = [i for i in jobs if i in pathset]
        if len(chain) != 1:
            raise AssertionError("tight schedule must hold one chain job per step")
        others = [i for i in jobs if i not in pathset]
        if others:
            u, v = chain[0], others[0]
            mu.add((min(u, v), max(u, v)))
    graph = bipartite_independence_graph(instance, path)
    found = augmenting_path(graph, mu)
    if found is None:
        raise AssertionError("expected an augmenting path below the matching bound")
    if found[0] not in pathset:
        found.reverse()
    return found


def apply_augmenting_sequence_min_makespan(instance, schedule, seq):
    """Raise covered work by one at the minimum makespan, following an
    alternating sequence of independent jobs.

    Each round either truncates the sequence at a step holding three jobs,
    shortcuts past a pair the pending translation would split, or applies one
    translation.  If a translation consumes the sequence without paying off,
    a fresh sequence is derived from the current schedule.
    """
    _check_uet_unit(instance)
    reach = transitive_closure(instance)
    path = critical_path(instance)
    pathset = set(path)
    x = schedule
    counts = {tau: len(jobs) for tau, jobs in _steps_of(instance, x).items()}
    if not _lemma1_seq_ok(instance, reach, pathset, list(x.x), counts, list(seq)):
        raise InstanceError("not a valid augmenting sequence for this schedule")
    target = under_level_work(instance, x) + 1
    seq = list(seq)
    rounds = 4 * instance.n * instance.n + 16
    while under_level_work(instance, x) < target:
        rounds -= 1
        if rounds < 0:
            raise AssertionError("augmenting-sequence improvement failed to converge")
        counts = {tau: len(jobs) for tau, jobs in _steps_of(instance, x).items()}
        if seq is None or not _lemma1_seq_ok(
            instance, reach, pathset, list(x.x), counts, seq
        ):
            seq = _derive_min_makespan_path(instance, x, path)
        x, seq = _lemma1_step(instance, reach, x, seq)
    if makespan(instance, x) != len(path):
        raise AssertionError("improvement changed the makespan")
    return x


def _lemma1_step(instance, reach, schedule, seq):
    x = list(schedule.x)
    counts = defaultdict(int)
    for xi in x:
        counts[xi] += 1
    r = len(seq) // 2 - 1
    for q in range(1, r + 1):
        if counts[x[seq[2 * q]]] >= 3:
            return schedule, seq[: 2 * q]
    if len(seq) == 2:
        return elementary_operation(instance, schedule, seq[0], seq[1]), None
    a, b = seq[0], seq[1]
    forward = x[a] < x[b]
    lo, hi = sorted((x[a], x[b]))
    for q in range(2, r + 1):
        jq = seq[2 * q - 1]
        blocked = (reach[jq] >> b) & 1 if forward else (reach[b] >> jq) & 1
        if blocked and lo < x[jq] < hi:
            # The pending translation would split this pair: shortcut to it.
            return schedule, [seq[0]] + seq[2 * q - 1 :]
    return elementary_operation(instance, schedule, a, b), seq[2:]


def improve_at_min_makespan(instance, schedule):
    """Iterate sequence improvements until covered work reaches its optimum
    at the minimum makespan (path length plus the cross matching size)."""
    _check_uet_unit(instance)
    prof = value_profile(instance)
    path = critical_path(instance)
    if makespan(instance, schedule) != prof.path_len or check_feasible(instance, schedule):
        raise InstanceError("schedule must be feasible with minimum makespan")
    target = prof.path_len + prof.cross_matching
    x = schedule
    while under_level_work(instance, x) < target:
        seq = _derive_min_makespan_path(instance, x, path)
        x = apply_augmenting_sequence_min_makespan(instance, x, seq)
    return x


# ---------------------------------------------------------------------------
# Extending the deadline
# ---------------------------------------------------------------------------

def _elongate(instance, schedule, tau, movers):
    x = list(schedule.x)
    new_x = [
        xi + 1 if xi > tau else xi
        for xi in x
    ]
    for i in movers:
        new_x[i] = tau + 1
    out = Schedule(tuple(new_x))
    before = under_level_work(instance, schedule)
    if under_level_work(instance, out) != before + len(movers):
        raise AssertionError("elongation changed covered work unexpectedly")
    if check_feasible(instance, out):
        raise AssertionError("elongation produced an infeasible schedule")
    return out


def one_job_elongation(instance, schedule):
    """Move one job off a step holding three or more onto a fresh next step;
    covered work grows by one and the makespan by one."""
    steps = _steps_of(instance, schedule)
    tau = min((t for t, jobs in steps.items() if len(jobs) >= 3), default=None)
    if tau is None:
        raise InstanceError("no step holds three or more jobs")
    return _elongate(instance, schedule, tau, [steps[tau][-1]])


def two_job_elongation(instance, schedule):
    """Move two jobs off a step holding four or more onto a fresh next step;
    covered work grows by two and the makespan by one."""
    steps = _steps_of(instance, schedule)
    tau = min((t for t, jobs in steps.items() if len(jobs) >= 4), default=None)
    if tau is None:
        raise InstanceError("no step holds four or more jobs")
    return _elongate(instance, schedule, tau, steps[tau][-2:])


def apply_generalized_augmenting_sequence(instance, schedule, seq):
    """Stretch an optimal schedule by one step while raising covered work by
    two, guided by an alternating sequence over the whole independence graph.

    The sequence is first normalized (truncations at triple steps, shortcuts
    around jumped triple steps), then the spanned window is repacked on two
    machines with one extra step.  Inputs must be optimal for their deadline:
    the arithmetic of the repack is asserted and fails loudly otherwise.
    """
    _check_uet_unit(instance)
    if check_feasible(instance, schedule):
        raise InstanceError("schedule must be feasible")
    x = list(schedule.x)
    steps = _steps_of(instance, schedule)
    if any(len(jobs) > 3 for jobs in steps.values()):
        raise InstanceError("every step must hold at most three jobs")
    reach = transitive_closure(instance)
    seq = list(seq)
    if not _seq_shape_ok(instance, reach, x, seq):
        raise InstanceError("not a valid augmenting sequence for this schedule")
    if len(steps[x[seq[0]]]) == 2 or len(steps[x[seq[-1]]]) == 2:
        raise InstanceError("sequence endpoints must not sit at two-job steps")
    if x[seq[0]] == x[seq[-1]]:
        raise InstanceError("sequence endpoints must sit at different steps")

    seq = _normalize_general_sequence(instance, reach, x, steps, seq)

    for end in (seq[0], seq[-1]):
        if len(steps[x[end]]) != 3:
            raise AssertionError(
                "sequence endpoint on an under-filled step: input schedule was not optimal"
            )

    tau_min = min(x[i] for i in seq)
    tau_max = max(x[i] for i in seq)
    window = [i for i in instance.jobs() if tau_min <= x[i] <= tau_max]
    inner = [i for i in window if i not in (seq[0], seq[-1])]
    pairs = 0
    for tau in range(tau_min, tau_max + 1):
        left = [i for i in steps[tau] if i not in (seq[0], seq[-1])]
        if len(left) not in (1, 2):
            raise AssertionError("window step count outside the expected 1..2 range")
        pairs += len(left) == 2
    window_len = tau_max - tau_min + 1
    if window_len != len(inner) - pairs:
        raise AssertionError("window accounting mismatch: input schedule was not optimal")

    frag = two_machine_reschedule(instance, window, tau_min)
    frag_len = max(frag.values()) - tau_min + 1
    if frag_len != window_len + 1:
        raise AssertionError("window repack length mismatch: input schedule was not optimal")

    new_x = list(x)
    for i in instance.jobs():
        if i in frag:
            new_x[i] = frag[i]
        elif x[i] > tau_max:
            new_x[i] = x[i] + 1
    out = Schedule(tuple(new_x))
    if under_level_work(instance, out) != under_level_work(instance, schedule) + 2:
        raise AssertionError("window repack changed covered work unexpectedly")
    if check_feasible(instance, out) or makespan(instance, out) != makespan(instance, schedule) + 1:
        raise AssertionError("window repack produced an infeasible schedule")
    return out


def _normalize_general_sequence(instance, reach, x, steps, seq):
    while True:
        r = len(seq) // 2 - 1
        truncated = False
        for q in range(1, r + 1):
            if len(steps[x[seq[2 * q]]]) >= 3:
                if x[seq[0]] == x[seq[2 * q]]:
                    seq = seq[2 * q :]
                else:
                    seq = seq[: 2 * q]
                truncated = True
                break
        if truncated:
            continue
        first_step, last_step = x[seq[0]], x[seq[-1]]
        fixed = False
        for e in range(0, len(seq) - 1, 2):
            u, v = seq[e], seq[e + 1]
            lo, hi = sorted((x[u], x[v]))
            for tau in range(lo + 1, hi):
                if tau in (first_step, last_step) or len(steps[tau]) != 3:
                    continue
                third = None
                for cand in steps[tau]:
                    if not (reach[u] >> cand) & 1 and not (reach[cand] >> u) & 1:
                        seq = seq[: e + 1] + [cand]
                        third = cand
                        break
                if third is None:
                    for cand in steps[tau]:
                        if not (reach[v] >> cand) & 1 and not (reach[cand] >> v) & 1:
                            seq = [cand] + seq[e + 1 :]
                            third = cand
                            break
                if third is None:
                    raise AssertionError("jumped triple step with no independent job")
                fixed = True
                break
            if fixed:
                break
        if not fixed:
            return seq


# ---------------------------------------------------------------------------
# Full solver
# ---------------------------------------------------------------------------

def solve(instance, M):
    """Optimal schedule for deadline M; covered work equals value_profile(M).

    Every intermediate schedule along the transformation chain is audited for
    feasibility and for matching the profile at its own makespan.
    """
    _check_uet_unit(instance)
    if instance.r is not None or instance.d is not None:
        raise InstanceError("release/due dates are not supported by this solver")
    if instance.n == 0:
        return Schedule(())
    work = instance if instance.M == M else replace(instance, M=M)
    prof = value_profile(work)
    if M < prof.path_len:
        raise InfeasibleError(f"deadline {M} below minimum makespan {prof.path_len}")

    if M >= work.n - prof.full_matching:
        sched = coffman_graham(work)
        _audit(work, sched, prof, M)
        return sched

    sched = earliest_schedule(work)
    sched = improve_at_min_makespan(work, sched)
    _audit(work, sched, prof, M)
    graph = independence_graph(work)
    seg1_end = prof.path_len + prof.full_matching - prof.cross_matching
    while makespan(work, sched) < M:
        steps = _steps_of(work, sched)
        if any(len(jobs) >= 4 for jobs in steps.values()):
            sched = two_job_elongation(work, sched)
        elif makespan(work, sched) < seg1_end:
            mu = set()
            for jobs in steps.values():
                if len(jobs) >= 2:
                    mu.add((jobs[0], jobs[1]))
            found = augmenting_path(graph, mu)
            if found is None:
                raise AssertionError("expected an augmenting pair below the matching bound")
            sched = apply_generalized_augmenting_sequence(work, sched, found)
        else:
            sched = one_job_elongation(work, sched)
        _audit(work, sched, prof, M)
    return sched


def _audit(instance, schedule, prof, M):
    bad = check_feasible(instance, schedule)
    if bad:
        raise AssertionError(f"intermediate schedule infeasible: {bad}")
    end = makespan(instance, schedule)
    if end > M:
        raise AssertionError("intermediate schedule exceeds the deadline")
    if under_level_work(instance, schedule) != prof.value(end):
        raise AssertionError("intermediate schedule is not optimal for its makespan")
