"""Cayley digraphs, Frucht graphs, rigid gadgets and fixing-number families.

Every construction re-verifies what it promises (automorphism group type,
fixing number, rigidity) before returning; a failed check raises
:class:`PostconditionError` instead of returning an unverified graph.
"""

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .autgrp import automorphism_group, canonical_form, fixing_number
from .graph import (
    ColoredDigraph, Graph, colored_digraph_reduce, decode_graph6, disjoint_union, encode_graph6,
)
from .groups import (
    Cyclic, DirectProduct, ElemAbelian2, Q8, abelian_part, closure,
    elementary_divisors, isomorphic_to_spec,
)

# the Frucht graph of an order-64 group with five generators has 4864 vertices
CONSTRUCTION_CAP = 8192


class PostconditionError(RuntimeError):
    """A construction failed its own verification."""


def cayley_digraph(spec, gens=None):
    """Arc ``g -> s*g`` of colour ``i`` for the ``i``-th generator ``s``."""
    table = spec.table
    gens = list(spec.generators if gens is None else gens)
    for s in gens:
        if not 0 <= s < spec.order:
            raise ValueError(f"generator index {s} out of range")
    if len(closure(table, gens)) != spec.order:
        raise ValueError("the given elements do not generate the group")
    arcs = [(g, int(table[s, g]), c) for c, s in enumerate(gens) for g in range(spec.order)]
    return ColoredDigraph(spec.order, arcs)


def frucht_graph(spec, gens=None, cap=CONSTRUCTION_CAP):
    """Simple graph with automorphism group ``spec``; group elements are vertices ``0..|G|-1``."""
    g = colored_digraph_reduce(cayley_digraph(spec, gens))
    _verify(g, spec, 1 if spec.order > 1 else 0, cap)
    return g


def _verify(g, spec, expected_fix, cap=CONSTRUCTION_CAP):
    aut = automorphism_group(g, cap)
    if not isomorphic_to_spec(aut, spec):
        raise PostconditionError(f"automorphism group of order {aut.order} is not {spec}")
    size, _ = fixing_number(g, cap)
    if expected_fix is not None and size != expected_fix:
        raise PostconditionError(f"fixing number {size}, expected {expected_fix}")
    return aut, size


# ---------------------------------------------------------------------------
# rigid gadgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gadget:
    kind: str
    m: int
    graph: Graph
    anchor: int


def _path_from(edges, start, length, nxt):
    prev = start
    for _ in range(length):
        edges.append((prev, nxt))
        prev = nxt
        nxt += 1
    return nxt


def rigid_gadget(kind, m):
    """Rigid tree (``"R"``) or rigid unicyclic graph (``"T"``) with more than ``m`` vertices.

    R is a spider whose legs have lengths ``1..t`` (``t >= 3``; legs 1 and 2
    alone form a path, which has a reflection).  Its anchor is the centre.
    T is a triangle with pendant paths of lengths ``a`` and ``a+1`` on two of
    its corners; the anchor is the third corner.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    kind = kind.upper()
    edges = []
    if kind == "R":
        t = 3
        while 1 + t * (t + 1) // 2 <= m:
            t += 1
        nxt = 1
        for leg in range(1, t + 1):
            nxt = _path_from(edges, 0, leg, nxt)
        g, anchor = Graph(nxt, edges), 0
    elif kind == "T":
        a = 1
        while 4 + 2 * a <= m:
            a += 1
        edges = [(0, 1), (1, 2), (0, 2)]
        nxt = _path_from(edges, 1, a, 3)
        nxt = _path_from(edges, 2, a + 1, nxt)
        g, anchor = Graph(nxt, edges), 0
    else:
        raise ValueError(f"gadget kind must be R or T, not {kind!r}")
    if automorphism_group(g, max(g.n, 1)).order != 1 or g.n <= m:
        raise PostconditionError(f"gadget {kind}_{m} is not rigid or too small")
    return Gadget(kind, m, g, anchor)


def attach(g, v, gadget):
    """Glue ``gadget`` to ``g`` by identifying its anchor with vertex ``v``."""
    index = {}
    nxt = g.n
    for x in range(gadget.graph.n):
        if x == gadget.anchor:
            index[x] = v
        else:
            index[x] = nxt
            nxt += 1
    edges = list(g.edges) + [(index[a], index[b]) for a, b in gadget.graph.edges]
    return Graph(nxt, edges)


def rigid_attach_reduction(g, v1, cap=CONSTRUCTION_CAP):
    """Attach ``R_{|g|}`` at ``v1`` if its component is a tree, ``T_{|g|}`` otherwise.

    Returns ``(graph, kind)``.  Checked: ``v1`` is fixed by every
    automorphism of the result, and the fixing number drops by at most one.
    """
    if not 0 <= v1 < g.n:
        raise IndexError(f"vertex {v1} out of range for {g.n} vertices")
    kind = "R" if g.is_forest_component(v1) else "T"
    out = attach(g, v1, rigid_gadget(kind, g.n))
    aut = automorphism_group(out, cap)
    if aut.orbit(v1) != {v1}:
        raise PostconditionError("attached vertex is still moved by an automorphism")
    before, _ = fixing_number(g, cap)
    after, _ = fixing_number(out, cap)
    if before > after + 1:
        raise PostconditionError(f"fixing number fell from {before} to {after}")
    return out, kind


# ---------------------------------------------------------------------------
# fixing-number families
# ---------------------------------------------------------------------------

def _divisor_spec(q):
    return ElemAbelian2(1) if q == 2 else Cyclic(q)


def _block_spec(divs):
    specs = [_divisor_spec(q) for q in divs]
    return specs[0] if len(specs) == 1 else DirectProduct(*specs)


def _blocks(divs, j):
    """Split the divisor list into ``j`` non-empty blocks (last block takes the rest)."""
    return [[q] for q in divs[:j - 1]] + [divs[j - 1:]]


def _decorate(g, group_vertices, length):
    """Hang a path of ``length`` vertices from each listed vertex."""
    edges = list(g.edges)
    nxt = g.n
    for v in group_vertices:
        nxt = _path_from(edges, v, length, nxt)
    return Graph(nxt, edges)


def _union_of_frucht(specs, cap):
    """Disjoint union of Frucht graphs with pairwise non-isomorphic components."""
    parts = []
    seen = set()
    for spec in specs:
        comp = frucht_graph(spec, cap=cap)
        length = 0
        while True:
            cand = _decorate(comp, range(spec.order), length) if length else comp
            form = canonical_form(cand, cap)
            # a pendant may also add symmetry by mimicking a gadget tail
            if form not in seen and automorphism_group(cand, cap).order == spec.order:
                break
            length += 1
        seen.add(form)
        parts.append(cand)
    out = parts[0]
    for p in parts[1:]:
        out = disjoint_union(out, p)
    return out


def fixing_family(h, cap=CONSTRUCTION_CAP):
    """Graphs ``Gamma_m`` with ``Aut = h`` and fixing number ``m`` for ``m = 1..d+1``.

    ``h`` must be Q8 times an abelian catalog part with ``d`` elementary
    divisors.  ``Gamma_1`` is the Frucht graph of ``h``; for ``m > 1`` the
    abelian divisors are split into ``m - 1`` blocks and the Frucht graphs
    of Q8 and of the blocks are placed side by side.
    """
    try:
        rest = abelian_part(h)
    except ValueError as exc:
        raise ValueError(f"unsupported group shape: {exc}") from None
    if h.order > 64:
        raise ValueError(f"group order {h.order} exceeds 64")
    divs = elementary_divisors(rest)
    d = len(divs)
    out = [(frucht_graph(h, cap=cap), 1)]
    for j in range(1, d + 1):
        specs = [Q8()] + [_block_spec(b) for b in _blocks(divs, j)]
        g = _union_of_frucht(specs, cap)
        _verify(g, h, j + 1, cap)
        out.append((g, j + 1))
    return out


# ---------------------------------------------------------------------------
# witness cache
# ---------------------------------------------------------------------------

CACHE_ENV = "HAMSYM_CACHE"


def cache_root():
    """``$HAMSYM_CACHE`` if set, else ``~/.cache/hamsym``."""
    root = os.environ.get(CACHE_ENV)
    return Path(root) if root else Path.home() / ".cache" / "hamsym"


def _cache_paths(spec, n, seed, root):
    ident = f"{spec.text()}|{n}|{seed}"
    digest = hashlib.sha256(ident.encode()).hexdigest()[:20]
    stem = Path(root) / f"witness-{digest}"
    return stem.with_suffix(".g6"), stem.with_suffix(".json")


def cached_witness(spec, n, seed=0, budget=None, root=None):
    """``find_graph_with_aut(spec, n, seed=seed)``, memoized on disk.

    Entries are keyed by ``(spec, n, seed)``: a graph6 file plus a sidecar
    JSON with the inputs and the verification result.  A cached graph is
    re-verified on load; an entry that fails is recomputed.
    Returns ``(graph or None, from_cache)``.
    """
    from .search import DEFAULT_BUDGET, find_graph_with_aut

    root = cache_root() if root is None else Path(root)
    g6_path, meta_path = _cache_paths(spec, n, seed, root)
    if g6_path.exists():
        try:
            g = decode_graph6(g6_path.read_text())
            if g.n == n and isomorphic_to_spec(automorphism_group(g, cap=max(n, 1)), spec):
                return g, True
        except ValueError:
            pass
    g = find_graph_with_aut(spec, n, budget=budget or DEFAULT_BUDGET, seed=seed)
    if g is None:
        return None, False
    aut = automorphism_group(g, cap=max(n, 1))
    meta = {
        "group": spec.text(), "n": n, "seed": seed,
        "graph6": encode_graph6(g), "aut_order": aut.order,
        "isomorphic_to_group": bool(isomorphic_to_spec(aut, spec)),
    }
    root.mkdir(parents=True, exist_ok=True)
    for path, text in ((g6_path, meta["graph6"] + "\n"),
                       (meta_path, json.dumps(meta, sort_keys=True, indent=2) + "\n")):
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_text(text)
        tmp.replace(path)
    return g, False


def q8_witness(seed=0, root=None):
    """A 16-vertex graph with automorphism group Q8 (cached search result)."""
    g, _ = cached_witness(Q8(), 16, seed=seed, root=root)
    if g is None:
        raise PostconditionError("no 16-vertex Q8 graph found within the default budget")
    return g


__all__ = [
    "CONSTRUCTION_CAP", "Gadget", "PostconditionError", "attach", "cayley_digraph",
    "fixing_family", "frucht_graph", "rigid_attach_reduction", "rigid_gadget",
    "CACHE_ENV", "cache_root", "cached_witness", "q8_witness",
]
