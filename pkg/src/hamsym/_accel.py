"""Hot kernels: ordered-partition refinement and pair-orbit labelling.

Both kernels exist twice, once as a numba ``@njit`` loop nest and once as a
vectorized numpy routine.  ``HAMSYM_NUMBA=0`` in the environment selects the
numpy path at import time; the two paths produce identical outputs.
"""

import os

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

TRACE_MOD = 2147483647
TRACE_MUL = 31337


def _numba_requested():
    flag = os.environ.get("HAMSYM_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


try:
    if not _numba_requested():
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _mix(trace, x):
    return (trace * TRACE_MUL + x) % TRACE_MOD


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def refine_numpy(indptr, indices, codes, lab, cstart, csize, active):
    """Refine an ordered partition to the coarsest equitable refinement.

    The relation is given in CSR form: the nonzero codes of row ``v`` are
    ``codes[indptr[v]:indptr[v+1]]`` at columns ``indices[...]``.  The
    partition lives in ``lab`` (vertex at each position), ``cstart`` (cell
    start per position) and ``csize`` (size, valid at cell starts).
    ``active`` flags splitter cells.  Arrays are updated in place; the return
    value is a trace that is invariant under relabelling of the input.
    """
    n = lab.shape[0]
    trace = 1
    pos = np.empty(n, dtype=np.int64)
    pos[lab] = np.arange(n)
    ncells = int(np.count_nonzero(cstart == np.arange(n)))
    while ncells < n:
        starts = np.flatnonzero(active)
        if starts.size == 0:
            break
        s = int(starts[0])
        active[s] = False
        members = lab[s:s + int(csize[s])]
        lo, hi = indptr[members], indptr[members + 1]
        take = np.repeat(hi - lo, hi - lo)
        if take.size == 0:
            continue
        offs = np.arange(take.size) - np.repeat(np.cumsum(hi - lo) - (hi - lo), hi - lo)
        entries = np.repeat(lo, hi - lo) + offs
        ew, ek = indices[entries], codes[entries]
        for k in np.unique(ek).tolist():
            cnt = np.bincount(ew[ek == k], minlength=n)
            cells = np.unique(cstart[pos[ew[ek == k]]])
            cells = cells[csize[cells] > 1]
            if cells.size == 0:
                continue
            sizes = csize[cells]
            sel = np.repeat(cells, sizes) + (np.arange(sizes.sum()) - np.repeat(np.cumsum(sizes) - sizes, sizes))
            keys = cnt[lab[sel]]
            owner = cstart[sel]
            order = np.lexsort((keys, owner))
            lab[sel] = lab[sel][order]
            keys = keys[order]
            pos[lab[sel]] = sel
            newcell = np.empty(sel.size, dtype=bool)
            newcell[0] = True
            newcell[1:] = (owner[1:] != owner[:-1]) | (keys[1:] != keys[:-1])
            split_cells = np.unique(owner[newcell & (sel != owner)])
            if split_cells.size == 0:
                continue
            # every piece of a split cell is logged, in position order
            logged = newcell & np.isin(owner, split_cells)
            piece_starts = sel[newcell]
            piece_sizes = np.diff(np.append(np.flatnonzero(newcell), sel.size))
            cstart[sel] = np.repeat(piece_starts, piece_sizes)
            csize[piece_starts] = piece_sizes
            for i in np.flatnonzero(logged).tolist():
                st = int(sel[i])
                active[st] = True
                trace = _mix(trace, s)
                trace = _mix(trace, k)
                trace = _mix(trace, st)
                trace = _mix(trace, int(csize[st]))
                trace = _mix(trace, int(keys[i]))
            ncells += int(np.count_nonzero(logged)) - split_cells.size
            if ncells == n:
                break
    return trace


def pair_orbit_labels_numpy(gens, n):
    """Label each unordered pair ``i < j`` by the smallest pair index in its orbit.

    ``gens`` is an ``(r, n)`` array of generator images.  Pair ``(i, j)`` has
    index ``i * n + j``.  Returns an ``(n, n)`` int64 array whose upper
    triangle holds the labels (the rest is -1).
    """
    out = np.full((n, n), -1, dtype=np.int64)
    iu, ju = np.triu_indices(n, 1)
    if iu.size == 0:
        return out
    flat = iu * n + ju
    pos = np.full(n * n, -1, dtype=np.int64)
    pos[flat] = np.arange(flat.size)
    src, dst = [], []
    for g in np.asarray(gens, dtype=np.int64).reshape(-1, n):
        a, b = g[iu], g[ju]
        src.append(np.arange(flat.size))
        dst.append(pos[np.minimum(a, b) * n + np.maximum(a, b)])
    m = flat.size
    if src:
        src, dst = np.concatenate(src), np.concatenate(dst)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    links = sparse.coo_matrix((np.ones(src.size), (src, dst)), shape=(m, m))
    _, comp = csgraph.connected_components(links, directed=True, connection="weak")
    smallest = np.full(comp.max() + 1, np.iinfo(np.int64).max)
    np.minimum.at(smallest, comp, flat)
    out[iu, ju] = smallest[comp]
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _mix_nb(trace, x):
        return (trace * TRACE_MUL + x) % TRACE_MOD

    @njit(cache=True, nogil=True)
    def refine_numba(indptr, indices, codes, lab, cstart, csize, active):
        n = lab.shape[0]
        trace = np.int64(1)
        pos = np.empty(n, np.int64)
        ncells = 0
        for p in range(n):
            pos[lab[p]] = p
            if cstart[p] == p:
                ncells += 1
        cnt = np.zeros(n, np.int64)
        keys = np.zeros(n, np.int64)
        seg = np.zeros(n, np.int64)
        marked = np.zeros(n, np.bool_)
        cells = np.zeros(n, np.int64)
        nnz = indices.shape[0]
        ew = np.empty(nnz, np.int64)
        ek = np.empty(nnz, np.int64)
        while ncells < n:
            s = -1
            for p in range(n):
                if active[p]:
                    s = p
                    break
            if s < 0:
                break
            active[s] = False
            m = 0
            for p in range(s, s + csize[s]):
                v = lab[p]
                for e in range(indptr[v], indptr[v + 1]):
                    ew[m] = indices[e]
                    ek[m] = codes[e]
                    m += 1
            if m == 0:
                continue
            order = np.argsort(ek[:m], kind="mergesort")
            a = 0
            while a < m:
                k = ek[order[a]]
                b = a
                ncell_list = 0
                while b < m and ek[order[b]] == k:
                    w = ew[order[b]]
                    cnt[w] += 1
                    c = cstart[pos[w]]
                    if not marked[c]:
                        marked[c] = True
                        cells[ncell_list] = c
                        ncell_list += 1
                    b += 1
                cl = np.sort(cells[:ncell_list])
                for ci in range(ncell_list):
                    c = cl[ci]
                    marked[c] = False
                    sz = csize[c]
                    if sz == 1:
                        continue
                    first = cnt[lab[c]]
                    differ = False
                    for p in range(c + 1, c + sz):
                        if cnt[lab[p]] != first:
                            differ = True
                            break
                    if not differ:
                        continue
                    for p in range(sz):
                        keys[p] = cnt[lab[c + p]]
                        seg[p] = lab[c + p]
                    korder = np.argsort(keys[:sz], kind="mergesort")
                    for p in range(sz):
                        lab[c + p] = seg[korder[p]]
                        pos[lab[c + p]] = c + p
                    st = c
                    for p in range(1, sz + 1):
                        if p == sz or keys[korder[p]] != keys[korder[p - 1]]:
                            nsz = c + p - st
                            csize[st] = nsz
                            for q in range(st, c + p):
                                cstart[q] = st
                            active[st] = True
                            trace = _mix_nb(trace, s)
                            trace = _mix_nb(trace, k)
                            trace = _mix_nb(trace, st)
                            trace = _mix_nb(trace, nsz)
                            trace = _mix_nb(trace, keys[korder[p - 1]])
                            ncells += 1
                            st = c + p
                    ncells -= 1
                for q in range(a, b):
                    cnt[ew[order[q]]] = 0
                a = b
                if ncells == n:
                    break
        return trace

    @njit(cache=True, nogil=True)
    def _find(parent, x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            nxt = parent[x]
            parent[x] = root
            x = nxt
        return root

    @njit(cache=True, nogil=True)
    def pair_orbit_labels_numba(gens, n):
        parent = np.arange(n * n)
        for r in range(gens.shape[0]):
            g = gens[r]
            for i in range(n):
                for j in range(i + 1, n):
                    a = g[i]
                    b = g[j]
                    if a > b:
                        a, b = b, a
                    x = _find(parent, i * n + j)
                    y = _find(parent, a * n + b)
                    if x < y:
                        parent[y] = x
                    elif y < x:
                        parent[x] = y
        out = np.full((n, n), -1, np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                out[i, j] = _find(parent, i * n + j)
        return out


if HAVE_NUMBA:

    def refine(indptr, indices, codes, lab, cstart, csize, active):
        return int(refine_numba(indptr, indices, codes, lab, cstart, csize, active))

    def pair_orbit_labels(gens, n):
        gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).reshape(-1, n))
        return pair_orbit_labels_numba(gens, n)
else:
    refine = refine_numpy
    pair_orbit_labels = pair_orbit_labels_numpy

BACKEND = "numba" if HAVE_NUMBA else "numpy"
