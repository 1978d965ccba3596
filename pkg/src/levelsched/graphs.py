"""Precedence-DAG utilities: closure, orders, critical paths, independence graphs.

All tie-breaks (topological order, critical-path choice) go to the smallest
job index so every downstream solver is deterministic.
"""

from dataclasses import dataclass

from .model import InfeasibleError, InstanceError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency tuples."""

    n: int
    adj: tuple

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u, v):
        return v in self.adj[u]


@dataclass(frozen=True)
class BipartiteGraph(Graph):
    """Undirected graph whose every edge crosses between `left` and its complement."""

    left: frozenset = frozenset()


def successors(instance):
    succ = [[] for _ in range(instance.n)]
    for i, j in instance.arcs:
        succ[i].append(j)
    return succ


def predecessors(instance):
    pred = [[] for _ in range(instance.n)]
    for i, j in instance.arcs:
        pred[j].append(i)
    return pred


def topological_order(instance):
    """Topological order of the jobs, smallest index first among the ready ones."""
    n = instance.n
    succ = successors(instance)
    indeg = [0] * n
    for _, j in instance.arcs:
        indeg[j] += 1
    import heapq

    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(order) != n:
        raise InstanceError("precedence cycle detected")
    return order


def transitive_closure(instance):
    """Reachability bitmasks: bit j of reach[i] is set iff a directed path i -> j exists."""
    n = instance.n
    succ = successors(instance)
    reach = [0] * n
    for i in reversed(topological_order(instance)):
        mask = 0
        for j in succ[i]:
            mask |= (1 << j) | reach[j]
        reach[i] = mask
    return reach


def earliest_starts(instance):
    """Earliest precedence-feasible start per job (release dates included when present)."""
    est = [instance.r[i] if instance.r is not None else 0 for i in instance.jobs()]
    pred = predecessors(instance)
    for i in topological_order(instance):
        for q in pred[i]:
            est[i] = max(est[i], est[q] + instance.p[q])
    return est


def tail_lengths(instance):
    """Per job, the longest total duration of a chain starting at the job (inclusive)."""
    succ = successors(instance)
    tail = [0] * instance.n
    for i in reversed(topological_order(instance)):
        best = 0
        for j in succ[i]:
            best = max(best, tail[j])
        tail[i] = instance.p[i] + best
    return tail


def latest_starts(instance, M):
    """Latest start per job under deadline M (due dates included when present).

    Raises InfeasibleError when M is below the critical-path weight.
    """
    succ = successors(instance)
    late = [0] * instance.n
    for i in reversed(topological_order(instance)):
        limit = M
        if instance.d is not None:
            limit = min(limit, instance.d[i])
        for j in succ[i]:
            limit = min(limit, late[j])
        late[i] = limit - instance.p[i]
        if late[i] < 0:
            raise InfeasibleError(f"deadline {M} is below the critical-path weight")
    return late


def critical_path(instance):
    """A maximum-weight chain of jobs (weights = durations), as an ordered job list.

    Empty instance gives an empty path; ties are broken by smallest job index.
    """
    if instance.n == 0:
        return []
    succ = successors(instance)
    weight = [0] * instance.n
    nxt = [-1] * instance.n
    for i in reversed(topological_order(instance)):
        best, best_j = 0, -1
        for j in sorted(succ[i]):
            if weight[j] > best:
                best, best_j = weight[j], j
        weight[i] = instance.p[i] + best
        nxt[i] = best_j
    start = min(range(instance.n), key=lambda i: (-weight[i], i))
    path = [start]
    while nxt[path[-1]] != -1:
        path.append(nxt[path[-1]])
    return path


def critical_path_weight(instance):
    return sum(instance.p[i] for i in critical_path(instance))


def independence_graph(instance):
    """Graph joining jobs that are incomparable in the precedence closure."""
    n = instance.n
    reach = transitive_closure(instance)
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if not (reach[i] >> j) & 1 and not (reach[j] >> i) & 1:
                adj[i].append(j)
                adj[j].append(i)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


def bipartite_independence_graph(instance, path):
    """Independence edges between jobs of a chain `path` and all other jobs."""
    reach = transitive_closure(instance)
    for a, b in zip(path, path[1:]):
        if not (reach[a] >> b) & 1:
            raise InstanceError(f"jobs {a} and {b} are not chained; not a valid path")
    left = frozenset(path)
    if len(left) != len(path):
        raise InstanceError("path contains repeated jobs")
    n = instance.n
    adj = [[] for _ in range(n)]
    for u in path:
        for v in range(n):
            if v in left:
                continue
            if not (reach[u] >> v) & 1 and not (reach[v] >> u) & 1:
                adj[u].append(v)
                adj[v].append(u)
    return BipartiteGraph(n, tuple(tuple(sorted(a)) for a in adj), left)


def is_uet(instance):
    return all(pi == 1 for pi in instance.p)


def is_unit_consumption(instance):
    return all(ci == 1 for ci in instance.c)


def is_in_tree(instance):
    """True when every job has at most one successor (an in-forest)."""
    count = [0] * instance.n
    for i, _ in instance.arcs:
        count[i] += 1
    return all(k <= 1 for k in count)
