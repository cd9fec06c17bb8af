"""Simple graphs, arc-coloured digraphs, graph6 and DOT."""

from dataclasses import dataclass

import numpy as np

GRAPH6_MAX_N = 2 ** 18
REDUCE_COLOR_CAP = 16


class Graph6Error(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``colors`` (optional) assigns a colour index to every vertex; colour
    indices must be contiguous from 0.
    """

    n: int
    edges: frozenset
    colors: tuple = None

    def __init__(self, n, edges=(), colors=None):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            norm.add((min(u, v), max(u, v)))
        if colors is not None:
            colors = tuple(int(c) for c in colors)
            if len(colors) != n:
                raise ValueError("one colour per vertex required")
            if colors and set(colors) != set(range(max(colors) + 1)):
                raise ValueError("colour indices must be contiguous from 0")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_adjacency(cls, adj, colors=None):
        adj = np.asarray(adj)
        iu, ju = np.nonzero(np.triu(adj, 1))
        return cls(adj.shape[0], zip(iu.tolist(), ju.tolist()), colors)

    def adjacency(self):
        adj = np.zeros((self.n, self.n), dtype=np.int8)
        if self.edges:
            e = np.array(sorted(self.edges))
            adj[e[:, 0], e[:, 1]] = 1
            adj[e[:, 1], e[:, 0]] = 1
        return adj

    def sorted_edges(self):
        return sorted(self.edges)

    def neighbors(self, v):
        return sorted({b for a, b in self.edges if a == v} | {a for a, b in self.edges if b == v})

    def degrees(self):
        return self.adjacency().sum(axis=1)

    def relabel(self, perm):
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        perm = np.asarray(perm)
        colors = None
        if self.colors is not None:
            c = np.empty(self.n, dtype=np.int64)
            c[perm] = self.colors
            colors = c.tolist()
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges), colors)

    def complement(self):
        adj = 1 - self.adjacency()
        np.fill_diagonal(adj, 0)
        return Graph.from_adjacency(adj, self.colors)

    def components(self):
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            a, b = find(u), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
        comps = {}
        for v in range(self.n):
            comps.setdefault(find(v), []).append(v)
        return [comps[r] for r in sorted(comps)]

    def component_of(self, v):
        for comp in self.components():
            if v in comp:
                return comp
        raise IndexError(v)

    def induced(self, vertices):
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(vertices), edges)

    def is_forest_component(self, v):
        """True iff the component containing ``v`` is a tree."""
        comp = set(self.component_of(v))
        m = sum(1 for a, b in self.edges if a in comp)
        return m == len(comp) - 1

    def to_graph6(self):
        return encode_graph6(self)

    def to_dot(self, name="G"):
        lines = [f"graph {name} {{"]
        palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray"]
        for v in range(self.n):
            if self.colors is None:
                lines.append(f"  {v};")
            else:
                c = self.colors[v]
                lines.append(f'  {v} [color="{palette[c % len(palette)]}", colorindex={c}];')
        for u, v in self.sorted_edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def empty_graph(n):
    return Graph(n, ())


def complete_graph(n):
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n):
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n):
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _encode_n(n):
    if n < 0 or n > 68719476735:
        raise Graph6Error(f"vertex count {n} not representable")
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def encode_graph6(g):
    if g.colors is not None:
        raise Graph6Error("graph6 cannot store vertex colours")
    n = g.n
    adj = g.adjacency().astype(bool)
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    ii, jj = np.triu_indices(n, 1)
    order = np.lexsort((ii, jj))
    bits = adj[ii[order], jj[order]].astype(np.uint8)
    pad = (-bits.size) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ (1 << np.arange(5, -1, -1))
    body = _encode_n(n) + groups.astype(int).tolist()
    return "".join(chr(63 + x) for x in body)


def decode_graph6(text):
    s = text.strip("\n\r")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    vals = [ord(ch) - 63 for ch in s]
    if not vals:
        raise Graph6Error("empty graph6 string")
    if any(v < 0 or v > 63 for v in vals):
        raise Graph6Error("graph6 character outside the printable range 63..126")
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated graph6 header")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
        if n <= 258047:
            raise Graph6Error("non-canonical 8-byte graph6 header")
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated graph6 header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
        if n <= 62:
            raise Graph6Error("non-canonical 4-byte graph6 header")
    if n > GRAPH6_MAX_N:
        raise Graph6Error(f"vertex count {n} exceeds {GRAPH6_MAX_N}")
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) < nchars:
        raise Graph6Error("truncated graph6 bit stream")
    if len(body) > nchars:
        raise Graph6Error("trailing bytes after graph6 bit stream")
    if nchars == 0:
        return Graph(n, ())
    arr = np.array(body, dtype=np.uint8)
    bits = ((arr[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)
    if bits[nbits:].any():
        raise Graph6Error("non-zero padding bits in graph6 string")
    bits = bits[:nbits]
    ii, jj = np.triu_indices(n, 1)
    order = np.lexsort((ii, jj))
    sel = np.flatnonzero(bits)
    return Graph(n, zip(ii[order][sel].tolist(), jj[order][sel].tolist()))


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def disjoint_union(g1, g2):
    """``g1`` followed by ``g2`` with ``g2``'s vertices shifted by ``g1.n``."""
    if g1.colors is not None or g2.colors is not None:
        raise ValueError("disjoint_union expects uncoloured graphs")
    edges = list(g1.edges) + [(u + g1.n, v + g1.n) for u, v in g2.edges]
    return Graph(g1.n + g2.n, edges)


@dataclass(frozen=True)
class ColoredDigraph:
    """Directed graph with coloured arcs ``(source, target, color)``."""

    n: int
    arcs: frozenset

    def __init__(self, n, arcs):
        norm = set()
        for s, t, c in arcs:
            s, t, c = int(s), int(t), int(c)
            if s == t:
                raise ValueError(f"self-arc at {s}")
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"arc ({s}, {t}) out of range")
            if c < 0:
                raise ValueError("arc colours are non-negative")
            norm.add((s, t, c))
        colors = {c for _, _, c in norm}
        if colors and colors != set(range(max(colors) + 1)):
            raise ValueError("arc colours must be contiguous from 0")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "arcs", frozenset(norm))

    @property
    def ncolors(self):
        return 1 + max((c for _, _, c in self.arcs), default=-1)

    def code_matrix(self):
        """``M[s, t]`` is a bitmask of the colours of arcs ``s -> t``."""
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for s, t, c in self.arcs:
            m[s, t] |= 1 << c
        return m

    def to_dot(self, name="C"):
        palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray"]
        lines = [f"digraph {name} {{"]
        for v in range(self.n):
            lines.append(f"  {v};")
        for s, t, c in sorted(self.arcs):
            lines.append(f'  {s} -> {t} [color="{palette[c % len(palette)]}", label="{c}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def colored_digraph_reduce(cd):
    """Replace every coloured arc by a rigid gadget; returns a simple graph.

    Arc ``s -> t`` of colour ``c`` becomes the path ``s - a - b - t`` with a
    pendant path of ``2c+2`` vertices hanging from ``a`` and ``2c+3`` from
    ``b``.  Tails start at two so a lone gadget cannot swap its source leaf
    with a tail.  Original vertices keep their indices ``0..n-1``.
    """
    if cd.ncolors > REDUCE_COLOR_CAP:
        raise ValueError(f"{cd.ncolors} arc colours exceed the cap of {REDUCE_COLOR_CAP}")
    edges = []
    nxt = cd.n
    for s, t, c in sorted(cd.arcs):
        a, b = nxt, nxt + 1
        nxt += 2
        edges += [(s, a), (a, b), (b, t)]
        for anchor, length in ((a, 2 * c + 2), (b, 2 * c + 3)):
            prev = anchor
            for _ in range(length):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
    return Graph(nxt, edges)
