"""Permutations and permutation groups.

Points are 0-indexed internally.  Text I/O uses 1-indexed cycle notation,
e.g. ``"(1,2,3,4)(5,6,7,8)"``; the identity is ``"()"``.

A permutation ``p`` acts on the left: ``p(x) = p.images[x]`` and
``(p * q)(x) = p(q(x))``.
"""

import math
import re
import numpy as np


class DegreeMismatch(ValueError):
    pass


class Perm:
    """An immutable permutation of ``{0, ..., n-1}`` stored as an image array."""

    __slots__ = ("images", "_key")

    def __init__(self, images, check=True):
        arr = np.array(images, dtype=np.int64).reshape(-1)
        if check:
            n = arr.shape[0]
            seen = np.zeros(n, dtype=bool)
            if n and (arr.min() < 0 or arr.max() >= n):
                raise ValueError("not a permutation: image out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("not a permutation: repeated image")
        arr.setflags(write=False)
        self.images = arr
        self._key = None

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n), check=False)

    @classmethod
    def from_cycles(cls, text, n=None):
        """Parse 1-indexed cycle notation; ``n`` defaults to the largest point."""
        cycles = parse_cycles(text)
        top = max((max(c) for c in cycles if c), default=0)
        if n is None:
            n = top
        if top > n:
            raise ValueError(f"point {top} exceeds degree {n}")
        img = np.arange(n)
        for cyc in cycles:
            pts = [x - 1 for x in cyc]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self):
        return self.images.shape[0]

    def key(self):
        if self._key is None:
            self._key = self.images.tobytes()
        return self._key

    def __call__(self, x):
        return int(self.images[x])

    def __mul__(self, other):
        if self.degree != other.degree:
            raise DegreeMismatch("cannot compose permutations of different degree")
        return Perm(self.images[other.images], check=False)

    def __pow__(self, k):
        result = Perm.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree)
        return Perm(inv, check=False)

    def __eq__(self, other):
        return isinstance(other, Perm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_identity(self):
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def support(self):
        return support_of(self)

    def cycles(self):
        """Non-trivial cycles as tuples of 0-indexed points, smallest point first."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            x = int(self.images[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(self.images[x])
            out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self):
        return math.lcm(*[len(c) for c in self.cycles()]) if self.cycles() else 1

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Perm({str(self)!r}, n={self.degree})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text):
    """Parse ``"(1,2,3)(4,5)"`` into ``[[1, 2, 3], [4, 5]]`` (whitespace ignored)."""
    compact = re.sub(r"\s+", "", text)
    if compact == "":
        raise ValueError("empty permutation text; write the identity as ()")
    if _CYCLE.sub("", compact) != "":
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    used = set()
    for body in _CYCLE.findall(compact):
        if body == "":
            continue
        try:
            pts = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise ValueError(f"malformed cycle notation: {text!r}") from None
        if min(pts) < 1:
            raise ValueError("cycle notation is 1-indexed")
        if used.intersection(pts) or len(set(pts)) != len(pts):
            raise ValueError(f"cycles are not disjoint: {text!r}")
        used.update(pts)
        cycles.append(pts)
    return cycles


def support_of(p):
    """Points moved by ``p``."""
    return set(np.flatnonzero(p.images != np.arange(p.degree)).tolist())


def _as_array(p):
    return p.images if isinstance(p, Perm) else np.asarray(p, dtype=np.int64)


def _orbits(n, gens):
    """Orbit id per point (the smallest point of each orbit)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in np.flatnonzero(g != np.arange(n)).tolist():
            a, b = find(x), find(int(g[x]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def _choose_base_point(n, gens):
    """Smallest point of the largest non-trivial orbit of ``<gens>``."""
    roots = _orbits(n, gens)
    sizes = {}
    for r in roots:
        sizes[r] = sizes.get(r, 0) + 1
    best = min((r for r in sizes if sizes[r] > 1), key=lambda r: (-sizes[r], r), default=None)
    return best


class PermGroup:
    """A permutation group with a stabilizer chain (deterministic Schreier-Sims).

    Instances are treated as immutable after construction.
    """

    def __init__(self, degree, generators=(), base_prefix=()):
        self.degree = int(degree)
        gens = []
        for g in generators:
            arr = _as_array(g)
            if arr.shape[0] != self.degree:
                raise DegreeMismatch(
                    f"generator of degree {arr.shape[0]} in a group of degree {self.degree}")
            gens.append(np.array(arr, dtype=np.int64))
        self.generators = [Perm(g, check=False) for g in gens]
        for x in base_prefix:
            if not 0 <= x < self.degree:
                raise IndexError(f"point {x} out of range for degree {self.degree}")
        self._ident = np.arange(self.degree)
        self._build(gens, list(base_prefix))

    # -- construction -----------------------------------------------------

    def _transversal(self, level):
        b = self.base[level]
        trans = {b: self._ident}
        queue = [b]
        gens = self.strong_gens[level]
        for x in queue:
            ux = trans[x]
            for s in gens:
                y = int(s[x])
                if y not in trans:
                    trans[y] = s[ux]
                    queue.append(y)
        return trans

    def _sift(self, g, start):
        for level in range(start, len(self.base)):
            b = int(g[self.base[level]])
            trans = self.transversals[level]
            if b not in trans:
                return g, level
            u = trans[b]
            uinv = np.empty_like(u)
            uinv[u] = self._ident
            g = uinv[g]
        return g, len(self.base)

    def _fixes_prefix(self, g, k):
        return all(g[b] == b for b in self.base[:k])

    def _build(self, gens, base):
        ident = self._ident
        gens = [g for g in gens if not np.array_equal(g, ident)]
        # every generator must move some base point
        for g in gens:
            if all(g[b] == b for b in base):
                stab = [h for h in gens if all(h[b] == b for b in base)]
                base.append(_choose_base_point(self.degree, stab))
        self.base = base
        self.strong_gens = [
            [g for g in gens if self._fixes_prefix(g, level)] for level in range(len(base))
        ]
        self.transversals = [self._transversal(level) for level in range(len(base))]

        i = len(base) - 1
        while i >= 0:
            restart = self._check_level(i)
            if restart is None:
                i -= 1
            else:
                i = restart

    def _check_level(self, i):
        """Sift the Schreier generators at level ``i``; return a restart level or None."""
        trans = self.transversals[i]
        for b, ub in list(trans.items()):
            for s in self.strong_gens[i]:
                sb = int(s[b])
                usb = trans[sb]
                usb_inv = np.empty_like(usb)
                usb_inv[usb] = self._ident
                h = usb_inv[s[ub]]
                if np.array_equal(h, self._ident):
                    continue
                residue, j = self._sift(h, i + 1)
                if np.array_equal(residue, self._ident):
                    continue
                if j == len(self.base):
                    stab = [g for g in self.strong_gens[j - 1] if g[self.base[j - 1]] == self.base[j - 1]]
                    point = _choose_base_point(self.degree, stab + [residue])
                    self.base.append(point)
                    self.strong_gens.append([])
                    self.transversals.append({point: self._ident})
                for level in range(i + 1, j + 1):
                    self.strong_gens[level].append(residue)
                    self.transversals[level] = self._transversal(level)
                return j
        return None

    # -- queries ----------------------------------------------------------

    @property
    def order(self):
        return math.prod(len(t) for t in self.transversals)

    def transversal_sizes(self):
        return [len(t) for t in self.transversals]

    def is_trivial(self):
        return self.order == 1

    def contains(self, p):
        arr = _as_array(p)
        if arr.shape[0] != self.degree:
            raise DegreeMismatch(f"permutation of degree {arr.shape[0]} vs group degree {self.degree}")
        residue, level = self._sift(np.asarray(arr, dtype=np.int64), 0)
        return level == len(self.base) and bool(np.array_equal(residue, self._ident))

    def __contains__(self, p):
        return self.contains(p)

    def orbit(self, x):
        if not 0 <= x < self.degree:
            raise IndexError(f"point {x} out of range for degree {self.degree}")
        seen = {x}
        queue = [x]
        for y in queue:
            for g in self.generators:
                z = g(y)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return seen

    def orbits(self):
        roots = _orbits(self.degree, [g.images for g in self.generators])
        out = {}
        for x, r in enumerate(roots):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    def element_array(self):
        """All elements as an ``(order, degree)`` array, identity first."""
        elems = self._ident[None, :]
        for trans in reversed(self.transversals):
            reps = np.array(list(trans.values()))
            # element = rep o (deeper product)
            elems = reps[:, elems].reshape(-1, self.degree)
        return elems

    def elements(self):
        for row in self.element_array():
            yield Perm(row, check=False)

    def strong_generators(self):
        seen = {}
        for level in self.strong_gens:
            for g in level:
                seen.setdefault(g.tobytes(), g)
        return [Perm(g, check=False) for g in seen.values()]

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def bsgs_build(generators, degree=None):
    """Build a stabilizer chain for ``<generators>``.

    ``degree`` is only needed when ``generators`` is empty.
    """
    gens = [g if isinstance(g, Perm) else Perm(g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return PermGroup(degree, gens)


def contains(group, p):
    return group.contains(p)


def orbit_of(group, x):
    return group.orbit(x)


def pointwise_stabilizer(group, points):
    """Subgroup of ``group`` fixing every point in ``points``."""
    points = sorted(set(points))
    for x in points:
        if not 0 <= x < group.degree:
            raise IndexError(f"point {x} out of range for degree {group.degree}")
    if not points:
        return group
    chain = PermGroup(group.degree, group.generators, base_prefix=points)
    k = len(points)
    gens = chain.strong_gens[k] if k < len(chain.base) else []
    gens = [g for g in gens if all(g[x] == x for x in points)]
    return PermGroup(group.degree, gens)


def minimal_base(group):
    """Smallest point set with trivial pointwise stabilizer, and a witness.

    Iterative deepening over the set size.  The i-th point is taken from
    orbit representatives of the stabilizer of the earlier points, which
    loses no base up to the action of the group.
    """
    if group.order == 1:
        return 0, []
    size = 1
    while True:
        found = _base_search(group, [], size)
        if found is not None:
            return size, found
        size += 1


def _base_search(group, chosen, remaining):
    if group.order == 1:
        return list(chosen)
    if remaining == 0:
        return None
    orbits = [o for o in group.orbits() if len(o) > 1]
    # each further point divides the order by at most the longest orbit
    if max(len(o) for o in orbits) ** remaining < group.order:
        return None
    for orb in sorted(orbits, key=lambda o: (-len(o), o[0])):
        rep = orb[0]
        stab = pointwise_stabilizer(group, [rep])
        found = _base_search(stab, chosen + [rep], remaining - 1)
        if found is not None:
            return found
    return None

