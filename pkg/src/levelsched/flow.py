"""Minimum-cost flow by successive shortest paths with node potentials.

Integer capacities and nonnegative integer costs; all flows stay integral.
"""

import heapq

from .model import InfeasibleError

INF = float("inf")


class MinCostFlow:
    """Residual-graph min-cost flow solver.

    add_edge returns a handle usable with flow_on after solving.
    """

    def __init__(self, n):
        self.n = n
        self.graph = [[] for _ in range(n)]

    def add_edge(self, u, v, cap, cost):
        if cap < 0 or cost < 0:
            raise ValueError("capacities and costs must be nonnegative")
        handle = (u, len(self.graph[u]))
        self.graph[u].append([v, cap, cost, len(self.graph[v]), cap])
        self.graph[v].append([u, 0, -cost, len(self.graph[u]) - 1, 0])
        return handle

    def flow_on(self, handle):
        u, idx = handle
        edge = self.graph[u][idx]
        return edge[4] - edge[1]

    def solve(self, source, sink, required):
        """Push `required` units from source to sink at minimum cost.

        Returns (flow, cost); raises InfeasibleError (naming a cut) when the
        required value is unreachable.
        """
        potential = [0] * self.n
        flow = 0
        cost = 0
        while flow < required:
            dist = [INF] * self.n
            parent = [None] * self.n
            dist[source] = 0
            heap = [(0, source)]
            while heap:
                du, u = heapq.heappop(heap)
                if du > dist[u]:
                    continue
                for idx, (v, cap, edge_cost, _, _) in enumerate(self.graph[u]):
                    if cap <= 0:
                        continue
                    nd = du + edge_cost + potential[u] - potential[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        parent[v] = (u, idx)
                        heapq.heappush(heap, (nd, v))
            if dist[sink] == INF:
                reachable = sorted(u for u in range(self.n) if dist[u] < INF)
                raise InfeasibleError(
                    f"flow of {required} unreachable: cut separates nodes {reachable}"
                )
            for u in range(self.n):
                if dist[u] < INF:
                    potential[u] += dist[u]
            bottleneck = required - flow
            v = sink
            while v != source:
                u, idx = parent[v]
                bottleneck = min(bottleneck, self.graph[u][idx][1])
                v = u
            v = sink
            while v != source:
                u, idx = parent[v]
                edge = self.graph[u][idx]
                edge[1] -= bottleneck
                self.graph[v][edge[3]][1] += bottleneck
                cost += bottleneck * edge[2]
                v = u
            flow += bottleneck
        return flow, cost
