"""Brute-force reference implementations used only by the tests.

Nothing here imports the search engines under test; everything is plain
enumeration over permutations, subsets or group elements.
"""

import itertools
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def all_perms(n):
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def adjacency(n, edges):
    a = np.zeros((n, n), dtype=np.int8)
    for u, v in edges:
        a[u, v] = a[v, u] = 1
    return a


def brute_automorphisms(adj, colors=None):
    """All permutations ``p`` with ``adj[p][:, p] == adj`` (and colours kept)."""
    adj = np.asarray(adj)
    n = adj.shape[0]
    perms = all_perms(n)
    if n == 0:
        return perms
    ok = (adj[perms[:, :, None], perms[:, None, :]] == adj).all(axis=(1, 2))
    if colors is not None:
        colors = np.asarray(colors)
        ok &= (colors[perms] == colors).all(axis=1)
    return perms[ok]


def brute_fixing_number(auts, n):
    """Smallest vertex set fixed pointwise only by the identity."""
    auts = np.asarray(auts)
    ident = np.arange(n)
    moving = auts[~(auts == ident).all(axis=1)]
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            s = list(s)
            if not (moving[:, s] == ident[s]).all(axis=1).any():
                return k
    return n


def brute_minimal_base(elements, n):
    return brute_fixing_number(elements, n)


def enumerate_group(gens, n):
    """Closure of permutation tuples under composition (left action)."""
    ident = tuple(range(n))
    gens = [tuple(int(x) for x in g) for g in gens]
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def brute_edge_orbits(elements, n):
    """Orbits of unordered pairs, as a sorted list of frozensets."""
    pairs = set(itertools.combinations(range(n), 2))
    orbits = []
    while pairs:
        a, b = min(pairs)
        orb = set()
        for g in elements:
            x, y = g[a], g[b]
            orb.add((min(x, y), max(x, y)))
        orbits.append(frozenset(orb))
        pairs -= orb
    return sorted(orbits, key=min)


def brute_orbit_preservers(orbits, n):
    """All permutations mapping every pair orbit onto itself."""
    label = {}
    for i, orb in enumerate(orbits):
        for p in orb:
            label[p] = i
    out = []
    for p in all_perms(n):
        if all(label[(min(p[a], p[b]), max(p[a], p[b]))] == i for (a, b), i in label.items()):
            out.append(tuple(int(x) for x in p))
    return out


def all_graphs(n):
    """Every labelled simple graph on ``n`` vertices, as edge lists."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def brute_isomorphic(n, edges1, edges2):
    a, b = adjacency(n, edges1), adjacency(n, edges2)
    perms = all_perms(n)
    return bool((a[perms[:, :, None], perms[:, None, :]] == b).all(axis=(1, 2)).any())


# ---------------------------------------------------------------------------
# groups from first principles
# ---------------------------------------------------------------------------

def quaternion_units():
    """The eight unit quaternions as integer 4-vectors (1, i, j, k components)."""
    units = []
    for axis in range(4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[axis] = sign
            units.append(tuple(v))
    return units


def quaternion_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def table_from_elements(elements, mul):
    index = {e: i for i, e in enumerate(elements)}
    return np.array([[index[mul(x, y)] for y in elements] for x in elements], dtype=np.int64)


def brute_subgroups(table):
    """Every subgroup of a small group, by closure of every subset."""
    n = table.shape[0]
    found = set()
    for mask in range(1 << n):
        s = [i for i in range(n) if mask >> i & 1]
        if 0 not in s:
            continue
        ss = set(s)
        if all(int(table[a, b]) in ss for a in s for b in s):
            found.add(frozenset(s))
    return found


def brute_isomorphic_tables(t1, t2):
    """Search all bijections fixing the identity (orders up to 8)."""
    n = t1.shape[0]
    if t2.shape[0] != n:
        return False
    for rest in itertools.permutations(range(1, n)):
        phi = np.array((0,) + rest)
        if (phi[t1] == t2[phi[:, None], phi[None, :]]).all():
            return True
    return False


def element_orders(table):
    n = table.shape[0]
    out = []
    for g in range(n):
        x, k = g, 1
        while x != 0:
            x = int(table[x, g])
            k += 1
        out.append(k)
    return out
