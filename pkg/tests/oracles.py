"""Slow reference implementations used only as test oracles.

They share no code with the library: plain Python loops over lists, no
numpy grid or neighbourhood helpers.
"""

import math
from itertools import combinations, permutations


def dbscan_oracle(rows, dims, candidates, eps, min_pts):
    ids = sorted(set(candidates))

    def close(a, b):
        return math.sqrt(sum((rows[a][j] - rows[b][j]) ** 2 for j in dims)) <= eps

    nbrs = {a: [b for b in ids if close(a, b)] for a in ids}
    cores = [a for a in ids if len(nbrs[a]) >= min_pts]
    core_set = set(cores)

    # union-find over core-core edges
    parent = {a: a for a in cores}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in cores:
        for b in nbrs[a]:
            if b in core_set:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    comps = {}
    for a in cores:
        comps.setdefault(find(a), set()).add(a)
    ordered = [comps[r] for r in sorted(comps, key=lambda r: min(comps[r]))]
    members = [set(c) for c in ordered]
    for b in ids:
        if b in core_set:
            continue
        # a border point joins the first cluster with a core point in reach
        for comp, out in zip(ordered, members):
            if any(b in nbrs[c] for c in comp):
                out.add(b)
                break
    return [frozenset(c) for c in members]


def clique_cell(value, lo, hi, xi):
    """Interval index by direct arithmetic: boundaries at lo + t*(hi-lo)/xi."""
    if hi <= lo:
        return 0
    width = (hi - lo) / xi
    idx = 0
    for t in range(1, xi):
        if value >= lo + width * t:
            idx = t
    return idx


def clique_oracle(rows, xi, tau):
    """Dense units of every subspace by exhaustive enumeration of all cells.

    Returns ({subspace: {cell: objects}}, [(subspace, objects) per component]).
    """
    n, d = len(rows), len(rows[0])
    thr = max(1, math.ceil(round(tau * n, 9)))
    cols = [[r[j] for r in rows] for j in range(d)]
    cell = [[clique_cell(rows[o][j], min(cols[j]), max(cols[j]), xi) for j in range(d)] for o in range(n)]
    dense = {}
    for size in range(1, d + 1):
        for sub in combinations(range(d), size):
            units = {}
            for c in _all_cells(xi, size):
                objs = frozenset(o for o in range(n) if tuple(cell[o][j] for j in sub) == c)
                if len(objs) >= thr:
                    units[c] = objs
            if units:
                dense[sub] = units
    comps = []
    for sub in sorted(dense, key=lambda s: (len(s), s)):
        units = dense[sub]
        left = set(units)
        while left:
            start = min(left)
            group, frontier = {start}, [start]
            left.discard(start)
            while frontier:
                u = frontier.pop()
                for v in list(left):
                    if sum(abs(a - b) for a, b in zip(u, v)) == 1:
                        left.discard(v)
                        group.add(v)
                        frontier.append(v)
            comps.append((sub, frozenset().union(*(units[u] for u in group))))
    return dense, comps


def _all_cells(xi, size):
    if size == 0:
        yield ()
        return
    for head in range(xi):
        for rest in _all_cells(xi, size - 1):
            yield (head,) + rest


def brute_force_matching(weights):
    """Maximum total weight of a one-to-one matching by trying every permutation."""
    rows = len(weights)
    cols = len(weights[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    if rows <= cols:
        return max(sum(weights[i][p[i]] for i in range(rows)) for p in permutations(range(cols), rows))
    return max(sum(weights[p[j]][j] for j in range(cols)) for p in permutations(range(rows), cols))
