"""Maximum matchings: BFS augmentation for bipartite graphs, Edmonds' blossom
algorithm for general graphs, and explicit augmenting-path search.

Matchings are represented as sets of (u, v) pairs with u < v.  Scan order is
always ascending vertex index, so results are deterministic.
"""

from collections import deque

from .model import InstanceError


def matching_to_partner(graph, matching):
    """Partner array for a matching; validates edges and vertex-disjointness."""
    partner = [-1] * graph.n
    for edge in matching:
        u, v = edge
        if not graph.has_edge(u, v):
            raise InstanceError(f"matching edge ({u}, {v}) is not in the graph")
        if partner[u] != -1 or partner[v] != -1:
            raise InstanceError(f"matching reuses a vertex of edge ({u}, {v})")
        partner[u] = v
        partner[v] = u
    return partner


def _partner_to_matching(partner):
    return {(u, v) for u, v in enumerate(partner) if v != -1 and u < v}


def augment(matching, path):
    """Flip a valid augmenting path into the matching; size grows by one."""
    out = set(matching)
    for idx in range(len(path) - 1):
        u, v = path[idx], path[idx + 1]
        edge = (min(u, v), max(u, v))
        if idx % 2 == 0:
            out.add(edge)
        else:
            out.remove(edge)
    return out


def max_matching_bipartite(graph):
    """Maximum matching of a bipartite graph by repeated BFS augmentation."""
    partner = [-1] * graph.n
    for root in sorted(graph.left):
        if partner[root] != -1:
            continue
        path = _bfs_augment_bipartite(graph, partner, root)
        if path is None:
            continue
        for idx in range(0, len(path) - 1, 2):
            u, v = path[idx], path[idx + 1]
            partner[u] = v
            partner[v] = u
    return _partner_to_matching(partner)


def _bfs_augment_bipartite(graph, partner, root):
    # Alternating BFS from an exposed left vertex to an exposed right vertex.
    parent = {root: None}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in graph.adj[u]:
            if v in parent:
                continue
            parent[v] = u
            if partner[v] == -1:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            parent[partner[v]] = v
            queue.append(partner[v])
    return None


def augmenting_path(graph, matching):
    """An alternating path between two exposed vertices, or None iff the
    matching already has maximum cardinality (Berge's characterization).

    Works on any simple graph; odd cycles are handled by blossom contraction.
    """
    partner = matching_to_partner(graph, matching)
    for root in range(graph.n):
        if partner[root] != -1:
            continue
        end, parent = _blossom_search(graph, partner, root)
        if end != -1:
            return _rebuild_path(partner, parent, end)
    return None


def max_matching_general(graph):
    """Maximum-cardinality matching of an arbitrary graph (blossom algorithm)."""
    partner = [-1] * graph.n
    for root in range(graph.n):
        if partner[root] != -1:
            continue
        end, parent = _blossom_search(graph, partner, root)
        if end == -1:
            continue
        # Flip matched/unmatched edges backwards along the found path.
        while end != -1:
            prev = parent[end]
            nxt = partner[prev]
            partner[end] = prev
            partner[prev] = end
            end = nxt
    return _partner_to_matching(partner)


def _blossom_search(graph, partner, root):
    """BFS over even vertices from an exposed root, contracting blossoms.

    Returns (exposed endpoint, parent array); endpoint -1 when no augmenting
    path from the root exists.  parent[v] is the even vertex preceding v.
    """
    n = graph.n
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for to in graph.adj[v]:
            if base[v] == base[to] or partner[v] == to:
                continue
            if to == root or (partner[to] != -1 and parent[partner[to]] != -1):
                # v and to are both even: the edge closes an odd cycle.
                cur = _lca(partner, parent, base, v, to)
                blossom = [False] * n
                _mark_path(partner, parent, base, blossom, v, cur, to)
                _mark_path(partner, parent, base, blossom, to, cur, v)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if partner[to] == -1:
                    return to, parent
                used[partner[to]] = True
                queue.append(partner[to])
    return -1, parent


def _lca(partner, parent, base, a, b):
    seen = [False] * len(base)
    v = a
    while True:
        v = base[v]
        seen[v] = True
        if partner[v] == -1:
            break
        v = parent[partner[v]]
    v = b
    while not seen[base[v]]:
        v = parent[partner[base[v]]]
    return base[v]


def _mark_path(partner, parent, base, blossom, v, b, child):
    while base[v] != b:
        blossom[base[v]] = True
        blossom[base[partner[v]]] = True
        parent[v] = child
        child = partner[v]
        v = parent[partner[v]]


def _rebuild_path(partner, parent, end):
    # Walk the flip sequence: exposed end, its parent, the parent's old partner, ...
    path = [end]
    v = parent[end]
    while True:
        path.append(v)
        if partner[v] == -1:
            break
        w = partner[v]
        path.append(w)
        v = parent[w]
    return path
