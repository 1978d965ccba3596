"""Independent brute-force optimizers used as ground truth for every solver.

These searches share only the instance types with the solver modules: the DFS
logic, bounds and window computations are written from scratch so agreement
between solver and oracle is meaningful evidence.
"""

from .model import InfeasibleError, Schedule, SearchSpaceError

SEARCH_GUARD = 10_000_000


def _windows(instance, M):
    """Per-job start-time windows [est, lst] tightened by precedence and dates."""
    n = instance.n
    succ = [[] for _ in range(n)]
    pred = [[] for _ in range(n)]
    indeg = [0] * n
    for i, j in instance.arcs:
        succ[i].append(j)
        pred[j].append(i)
        indeg[j] += 1
    order = []
    ready = [i for i in range(n) if indeg[i] == 0]
    while ready:
        i = min(ready)
        ready.remove(i)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    est = [instance.r[i] if instance.r is not None else 0 for i in range(n)]
    for i in order:
        for q in pred[i]:
            est[i] = max(est[i], est[q] + instance.p[q])
    lst = [0] * n
    for i in reversed(order):
        limit = M
        if instance.d is not None:
            limit = min(limit, instance.d[i])
        for j in succ[i]:
            limit = min(limit, lst[j])
        lst[i] = limit - instance.p[i]
        if lst[i] < est[i]:
            raise InfeasibleError(f"no feasible start for job {i} with deadline {M}")
    return order, est, lst, pred


def brute_force_leveling(instance, M, on_schedule=None):
    """Exact maximum of under-level work over feasible schedules with makespan <= M.

    Returns (optimal value, first witness schedule).  Refuses search spaces
    whose product of start-time windows exceeds SEARCH_GUARD.  The optional
    on_schedule(x, value) callback fires for every complete schedule the
    search visits.
    """
    n = instance.n
    if n == 0:
        return 0, Schedule(())
    order, est, lst, pred = _windows(instance, M)
    space = 1
    for i in range(n):
        space *= lst[i] - est[i] + 1
        if space > SEARCH_GUARD:
            raise SearchSpaceError(
                f"start-window product exceeds {SEARCH_GUARD}; instance refused"
            )
    L = instance.L
    cap = [min(instance.c[i], L) * instance.p[i] for i in range(n)]
    remaining_cap = [0] * (n + 1)
    for k in reversed(range(n)):
        remaining_cap[k] = remaining_cap[k + 1] + cap[order[k]]
    ceiling = min(L * M, remaining_cap[0])

    load = [0] * M
    x = [0] * n
    best = [-1, None]

    def dfs(k, value):
        if k == n:
            if on_schedule is not None:
                on_schedule(tuple(x), value)
            if value > best[0]:
                best[0] = value
                best[1] = tuple(x)
            return
        if value + remaining_cap[k] <= best[0] or best[0] == ceiling:
            return
        i = order[k]
        lo = est[i]
        for q in pred[i]:
            lo = max(lo, x[q] + instance.p[q])
        ci = instance.c[i]
        for t in range(lo, lst[i] + 1):
            x[i] = t
            if ci == 0:
                dfs(k + 1, value)
                continue
            gained = 0
            for tau in range(t, t + instance.p[i]):
                gained += min(L, load[tau] + ci) - min(L, load[tau])
                load[tau] += ci
            dfs(k + 1, value + gained)
            for tau in range(t, t + instance.p[i]):
                load[tau] -= ci
    dfs(0, 0)
    if best[1] is None:
        raise InfeasibleError(f"no feasible schedule within deadline {M}")
    return best[0], Schedule(best[1])


def brute_force_pk_cmax(instance, k):
    """Exact minimum makespan on k identical machines (c values are ignored).

    Handles precedence and release/due dates when present.  A start vector is
    a valid k-machine schedule iff at most k jobs ever run simultaneously.
    """
    n = instance.n
    if n == 0:
        return 0
    if n > 8:
        raise SearchSpaceError("machine-scheduling brute force limited to 8 jobs")
    horizon = sum(instance.p) + (max(instance.r) if instance.r is not None else 0)
    if instance.d is not None:
        horizon = min(horizon, max(instance.d))
    order, est, lst, pred = _windows(instance, horizon)
    tail = [0] * n
    succ = [[] for _ in range(n)]
    for i, j in instance.arcs:
        succ[i].append(j)
    for i in reversed(order):
        tail[i] = instance.p[i] + max((tail[j] for j in succ[i]), default=0)

    running = [0] * horizon
    x = [0] * n
    best = [horizon + 1]

    def dfs(idx, finish):
        if finish >= best[0]:
            return
        if idx == n:
            best[0] = finish
            return
        i = order[idx]
        lo = est[i]
        for q in pred[i]:
            lo = max(lo, x[q] + instance.p[q])
        for t in range(lo, lst[i] + 1):
            if max(finish, t + tail[i]) >= best[0]:
                break
            if any(running[tau] >= k for tau in range(t, t + instance.p[i])):
                continue
            x[i] = t
            for tau in range(t, t + instance.p[i]):
                running[tau] += 1
            dfs(idx + 1, max(finish, t + instance.p[i]))
            for tau in range(t, t + instance.p[i]):
                running[tau] -= 1

    dfs(0, 0)
    if best[0] > horizon:
        raise InfeasibleError("no feasible machine schedule within the date horizon")
    return best[0]


def brute_force_matching(graph):
    """Exact maximum-matching size by branching over the lowest uncovered vertex."""
    if graph.n > 16:
        raise SearchSpaceError("matching brute force limited to 16 vertices")

    def rec(covered, start):
        v = start
        while v < graph.n and (covered >> v) & 1:
            v += 1
        if v >= graph.n:
            return 0
        # v stays unmatched, or matches any free neighbor.
        best = rec(covered | (1 << v), v + 1)
        for u in graph.adj[v]:
            if not (covered >> u) & 1:
                best = max(best, 1 + rec(covered | (1 << v) | (1 << u), v + 1))
        return best

    return rec(0, 0)
