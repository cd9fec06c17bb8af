"""Automorphism groups, canonical forms and fixing numbers.

The search is individualization-refinement: equitable refinement of an
ordered partition, target cell = first smallest non-singleton cell,
children in ascending vertex order, and pruning by the orbits of the
automorphisms found so far.  It works on an arbitrary integer relation
matrix, so coloured and directed structures go through the same code.
"""

import sys

import numpy as np

from . import _accel
from .graph import Graph
from .perm import PermGroup, minimal_base

AUT_VERTEX_CAP = 256


class SearchCapExceeded(ValueError):
    pass


def _code_matrix(matrix):
    """Compress an arbitrary relation matrix into codes ``0..K-1``.

    The code of ``(v, w)`` records both ``M[v, w]`` and ``M[w, v]`` so that
    directed relations are refined in both directions.  Code 0 is reserved
    for "no relation in either direction".
    """
    m = np.asarray(matrix, dtype=np.int64)
    n = m.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    pair = np.stack([m, m.T], axis=-1).reshape(-1, 2)
    uniq, inv = np.unique(pair, axis=0, return_inverse=True)
    inv = inv.reshape(n, n)
    zero = np.flatnonzero((uniq == 0).all(axis=1))
    if zero.size:
        # move the all-zero relation to code 0, keep the rest in sorted order
        remap = np.arange(len(uniq))
        remap[remap < zero[0]] += 1
        remap[zero[0]] = 0
        inv = remap[inv]
    else:
        inv = inv + 1
    np.fill_diagonal(inv, 0)
    return inv


class Relation:
    """A coded relation on ``0..n-1`` in CSR form plus its sorted triple list."""

    def __init__(self, n, rows, cols, codes):
        order = np.lexsort((cols, rows))
        self.n = n
        self.rows = np.asarray(rows, dtype=np.int64)[order]
        self.cols = np.asarray(cols, dtype=np.int64)[order]
        self.codes = np.asarray(codes, dtype=np.int64)[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.rows, minlength=n), out=self.indptr[1:])

    @classmethod
    def from_matrix(cls, matrix):
        code = _code_matrix(matrix)
        rows, cols = np.nonzero(code)
        return cls(code.shape[0], rows, cols, code[rows, cols])

    @classmethod
    def from_graph(cls, g):
        e = np.array(sorted(g.edges), dtype=np.int64).reshape(-1, 2)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return cls(g.n, rows, cols, np.ones(rows.size, dtype=np.int64))

    def relabelled(self, g):
        """Sorted triples of the image relation under ``v -> g[v]``."""
        r, c = g[self.rows], g[self.cols]
        order = np.lexsort((c, r))
        return r[order], c[order], self.codes[order]

    def certificate(self, lab):
        """Triples of the relation read in the order ``lab`` (position labels)."""
        inv = np.empty(self.n, dtype=np.int64)
        inv[lab] = np.arange(self.n)
        r, c, k = self.relabelled(inv)
        return np.concatenate([r, c, k]).astype(">i4").tobytes()

    def preserved_by(self, g):
        r, c, k = self.relabelled(g)
        return (np.array_equal(r, self.rows) and np.array_equal(c, self.cols)
                and np.array_equal(k, self.codes))


class _Partition:
    __slots__ = ("lab", "cstart", "csize")

    def __init__(self, lab, cstart, csize):
        self.lab = lab
        self.cstart = cstart
        self.csize = csize

    def copy(self):
        return _Partition(self.lab.copy(), self.cstart.copy(), self.csize.copy())

    def starts(self):
        return np.flatnonzero(self.cstart == np.arange(self.lab.shape[0]))

    def is_discrete(self):
        return bool((self.csize[self.starts()] == 1).all())


class AutSearch:
    """One individualization-refinement search over a relation matrix."""

    def __init__(self, relation, colors=None, canonical=True):
        self.rel = relation
        self.n = relation.n
        if colors is None:
            colors = np.zeros(self.n, dtype=np.int64)
        self.colors = np.asarray(colors, dtype=np.int64)
        self.canonical = canonical
        self.generators = []
        self.first = None
        self.best = None
        self.nodes = 0

    # -- partitions ---------------------------------------------------------

    def _root(self):
        n = self.n
        lab = np.argsort(self.colors, kind="stable").astype(np.int64)
        sorted_colors = self.colors[lab]
        newcell = np.ones(n, dtype=bool)
        newcell[1:] = sorted_colors[1:] != sorted_colors[:-1]
        starts = np.flatnonzero(newcell)
        sizes = np.diff(np.append(starts, n))
        cstart = np.repeat(starts, sizes).astype(np.int64)
        csize = np.zeros(n, dtype=np.int64)
        csize[starts] = sizes
        active = np.zeros(n, dtype=np.bool_)
        active[starts] = True
        part = _Partition(lab, cstart, csize)
        inv = self._refine(part, active, tuple(sizes.tolist()))
        return part, inv

    def _refine(self, part, active, extra=()):
        rel = self.rel
        trace = _accel.refine(rel.indptr, rel.cols, rel.codes, part.lab, part.cstart, part.csize, active)
        starts = part.starts()
        return (trace, len(starts), part.csize[starts].tobytes(), extra)

    def _individualize(self, part, v):
        child = part.copy()
        lab = child.lab
        pos = int(np.flatnonzero(lab == v)[0])
        s = int(child.cstart[pos])
        size = int(child.csize[s])
        lab[pos], lab[s] = lab[s], lab[pos]
        child.csize[s] = 1
        child.cstart[s + 1:s + size] = s + 1
        child.csize[s + 1] = size - 1
        active = np.zeros(self.n, dtype=np.bool_)
        active[s] = True
        inv = self._refine(child, active, (s,))
        return child, inv

    @staticmethod
    def _target_cell(part):
        starts = part.starts()
        sizes = part.csize[starts]
        big = sizes > 1
        smallest = sizes[big].min()
        s = int(starts[np.flatnonzero(sizes == smallest)[0]])
        return part.lab[s:s + smallest]

    # -- pruning ------------------------------------------------------------

    def _orbit_roots(self, prefix):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            if all(g[v] == v for v in prefix):
                for x in np.flatnonzero(g != np.arange(self.n)).tolist():
                    a, b = find(x), find(int(g[x]))
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def _viable(self, invs):
        if self.first is None:
            return True
        depth = len(invs)
        if invs == self.first[1][:depth]:
            return True
        if not self.canonical:
            return False
        return invs >= self.best[1][:depth]

    # -- search -------------------------------------------------------------

    def run(self):
        part, inv = self._root()
        limit = sys.getrecursionlimit()
        if self.n + 50 > limit:
            sys.setrecursionlimit(self.n + 200)
        self._node(part, [], [inv])
        return self

    def _node(self, part, prefix, invs):
        self.nodes += 1
        if part.is_discrete():
            return self._leaf(part, prefix, invs)
        cell = sorted(self._target_cell(part).tolist())
        level = len(prefix)
        explored = []
        ngens = -1
        find = None
        for v in cell:
            if explored:
                if ngens != len(self.generators):
                    ngens = len(self.generators)
                    find = self._orbit_roots(prefix)
                root = find(v)
                if any(find(w) == root for w in explored):
                    continue
            child, inv = self._individualize(part, v)
            cinvs = invs + [inv]
            if not self._viable(cinvs):
                continue
            explored.append(v)
            jump = self._node(child, prefix + [v], cinvs)
            if jump is not None and jump < level:
                return jump
        return None

    def _leaf(self, part, prefix, invs):
        lab = part.lab.copy()
        cert = self.rel.certificate(lab) + self.colors[lab].tobytes()
        entry = (lab, invs, cert, list(prefix))
        if self.first is None:
            self.first = entry
            self.best = entry
            return None
        if invs == self.first[1] and cert == self.first[2]:
            self._add_automorphism(self.first[0], lab)
            return _common_prefix(prefix, self.first[3])
        if self.canonical:
            key, best_key = (invs, cert), (self.best[1], self.best[2])
            if key == best_key:
                self._add_automorphism(self.best[0], lab)
                return _common_prefix(prefix, self.best[3])
            if key > best_key:
                self.best = entry
        return None

    def _add_automorphism(self, lab_from, lab_to):
        g = np.empty(self.n, dtype=np.int64)
        g[lab_from] = lab_to
        if not self.rel.preserved_by(g):
            raise AssertionError("search produced a map that does not preserve the relation")
        if not np.array_equal(self.colors[g], self.colors):
            raise AssertionError("search produced a map that does not preserve colours")
        if not np.array_equal(g, np.arange(self.n)):
            self.generators.append(g)

    # -- results ------------------------------------------------------------

    def group(self):
        return PermGroup(max(self.n, 1), self.generators if self.n else [])

    def canonical_labeling(self):
        """``lab[i]`` is the vertex placed at canonical position ``i``."""
        return self.best[0]


def _common_prefix(a, b):
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def _check_cap(n, cap):
    if n > cap:
        raise SearchCapExceeded(f"{n} vertices exceed the search cap of {cap}")


def automorphism_group(g, cap=AUT_VERTEX_CAP):
    """``Aut(g)`` as a permutation group on ``V(g)`` (colours are preserved)."""
    _check_cap(g.n, cap)
    if g.n == 0:
        return PermGroup(1, [])
    search = AutSearch(Relation.from_graph(g), g.colors, canonical=False).run()
    return search.group()


def automorphism_group_matrix(matrix, colors=None, cap=AUT_VERTEX_CAP):
    """Automorphisms of an integer relation matrix (``P M P^T = M``)."""
    matrix = np.asarray(matrix)
    _check_cap(matrix.shape[0], cap)
    if matrix.shape[0] == 0:
        return PermGroup(1, [])
    return AutSearch(Relation.from_matrix(matrix), colors, canonical=False).run().group()


def canonical_labeling(g, cap=AUT_VERTEX_CAP):
    _check_cap(g.n, cap)
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    return AutSearch(Relation.from_graph(g), g.colors, canonical=True).run().canonical_labeling()


def canonical_form(g, cap=AUT_VERTEX_CAP):
    """Byte string equal for isomorphic graphs and different otherwise."""
    lab = canonical_labeling(g, cap)
    adj = g.adjacency()[np.ix_(lab, lab)] if g.n else np.zeros((0, 0), dtype=np.int8)
    iu = np.triu_indices(g.n, 1)
    bits = np.packbits(adj[iu].astype(np.uint8))
    head = g.n.to_bytes(4, "big")
    colors = b""
    if g.colors is not None:
        colors = b"C" + np.asarray(g.colors, dtype=np.int32)[lab].astype(">i4").tobytes()
    return head + colors + bits.tobytes()


def canonical_graph(g, cap=AUT_VERTEX_CAP):
    """The canonical relabelling of ``g`` (vertex ``lab[i]`` becomes ``i``)."""
    lab = canonical_labeling(g, cap)
    inv = np.empty(g.n, dtype=np.int64)
    inv[lab] = np.arange(g.n)
    return g.relabel(inv)


def fixing_number(g, cap=AUT_VERTEX_CAP):
    """Minimum size of a vertex set whose pointwise stabilizer in Aut(g) is trivial."""
    size, witness = minimal_base(automorphism_group(g, cap))
    return size, sorted(witness)


def is_rigid(g, cap=AUT_VERTEX_CAP):
    return automorphism_group(g, cap).order == 1


def are_isomorphic(g1, g2, cap=AUT_VERTEX_CAP):
    return g1.n == g2.n and canonical_form(g1, cap) == canonical_form(g2, cap)


__all__ = [
    "AUT_VERTEX_CAP", "AutSearch", "Graph", "Relation", "SearchCapExceeded", "are_isomorphic",
    "automorphism_group", "automorphism_group_matrix", "canonical_form", "canonical_graph",
    "canonical_labeling", "fixing_number", "is_rigid",
]
