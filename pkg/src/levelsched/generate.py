"""Deterministic pseudo-random instance generators.

Each generator is a pure function of (n, seed): the same arguments always
produce the same instance, byte-identical after serialization.
"""

import random

from .model import Instance, InstanceError


def random_dag(n, seed, edge_prob=0.4, level=2):
    """Unit jobs, unit consumptions, forward random arcs at `edge_prob`."""
    rng = random.Random(("dag", n, seed))
    arcs = tuple(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < edge_prob
    )
    return Instance(p=(1,) * n, c=(1,) * n, L=level, arcs=arcs)


def random_in_tree(n, seed, level=2):
    """Unit jobs on an in-forest: every job has at most one successor."""
    rng = random.Random(("in-tree", n, seed))
    arcs = []
    for i in range(1, n):
        if rng.random() < 0.15:
            continue  # new root: forest component
        arcs.append((i, rng.randrange(i)))
    return Instance(p=(1,) * n, c=(1,) * n, L=level, arcs=tuple(arcs))


def random_windows(n, seed, level=1, max_p=3):
    """Jobs with unit consumptions and feasible release/due windows."""
    rng = random.Random(("windows", n, seed))
    p, r, d = [], [], []
    for _ in range(n):
        pi = rng.randint(1, max_p)
        ri = rng.randint(0, 5)
        di = ri + pi + rng.randint(0, 4)
        p.append(pi)
        r.append(ri)
        d.append(di)
    return Instance(
        p=tuple(p), c=(1,) * n, L=level, r=tuple(r), d=tuple(d), M=max(d)
    )


def random_free(n, seed, max_p=4, max_c=4):
    """Unstructured jobs: mixed durations and consumptions, no constraints."""
    rng = random.Random(("free", n, seed))
    p = tuple(rng.randint(1, max_p) for _ in range(n))
    c = tuple(rng.randint(0, max_c) for _ in range(n))
    level = rng.randint(1, 3)
    total = sum(p)
    M = max(max(p), (total * 2) // 3, 1)
    return Instance(p=p, c=c, L=level, M=M)


KINDS = {
    "dag": random_dag,
    "in-tree": random_in_tree,
    "windows": random_windows,
    "free": random_free,
}


def generate(kind, n, seed):
    if kind not in KINDS:
        raise InstanceError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    if n < 1:
        raise InstanceError("n must be at least 1")
    return KINDS[kind](n, seed)
