"""Abstract group catalog realized by multiplication tables.

Catalog: ``Cyclic(n)``, ``ElemAbelian2(k)``, ``Q8`` and ``DirectProduct`` of
those.  Element 0 is always the identity.  Direct products use mixed-radix
encoding with the first factor most significant.
"""

import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .perm import Perm, PermGroup

TABLE_CAP = 512
SUBGROUP_CAP = 128
ACTION_DEGREE_CAP = 24
EMBED_EXHAUSTIVE_CAP = 10


class CapExceeded(ValueError):
    """An input exceeds a documented size cap."""


class GroupSpec:
    """Base class of catalog groups."""

    @property
    def order(self):
        raise NotImplementedError

    @property
    def table(self):
        return multiplication_table(self)

    @property
    def generators(self):
        """Generator element indices."""
        return _generators(self)

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cyclic group order must be positive")

    @property
    def order(self):
        return self.n

    def text(self):
        return f"c{self.n}"


@dataclass(frozen=True)
class ElemAbelian2(GroupSpec):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("rank must be non-negative")

    @property
    def order(self):
        return 2 ** self.k

    def text(self):
        return f"e2^{self.k}"


@dataclass(frozen=True)
class Q8(GroupSpec):
    @property
    def order(self):
        return 8

    def text(self):
        return "q8"


@dataclass(frozen=True)
class DirectProduct(GroupSpec):
    factors: tuple

    def __init__(self, *factors):
        if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
            factors = tuple(factors[0])
        if not factors:
            raise ValueError("direct product needs at least one factor")
        object.__setattr__(self, "factors", tuple(factors))

    @property
    def order(self):
        return math.prod(f.order for f in self.factors)

    def text(self):
        return "prod(" + ",".join(f.text() for f in self.factors) + ")"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(prod|q8|c\d+|e2\^\d+|\(|\)|,)", re.IGNORECASE)


def parse_spec(text):
    """Parse ``q8``, ``c<n>``, ``e2^<k>`` or ``prod(a,b,...)``."""
    tokens = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise ValueError(f"cannot parse group spec {text!r} at offset {pos}")
        tokens.append(m.group(1).lower())
        pos = m.end()
    if not tokens:
        raise ValueError("empty group spec")
    spec, rest = _parse_tokens(tokens, text)
    if rest:
        raise ValueError(f"trailing input in group spec {text!r}")
    return spec


def _parse_tokens(tokens, text):
    head, rest = tokens[0], tokens[1:]
    if head == "q8":
        return Q8(), rest
    if head.startswith("c"):
        return Cyclic(int(head[1:])), rest
    if head.startswith("e2^"):
        return ElemAbelian2(int(head[3:])), rest
    if head == "prod":
        if not rest or rest[0] != "(":
            raise ValueError(f"expected '(' after prod in {text!r}")
        rest = rest[1:]
        factors = []
        while True:
            if not rest:
                raise ValueError(f"unterminated prod(...) in {text!r}")
            factor, rest = _parse_tokens(rest, text)
            factors.append(factor)
            if not rest:
                raise ValueError(f"unterminated prod(...) in {text!r}")
            if rest[0] == ",":
                rest = rest[1:]
                continue
            if rest[0] == ")":
                return DirectProduct(*factors), rest[1:]
            raise ValueError(f"unexpected token {rest[0]!r} in {text!r}")
    raise ValueError(f"unexpected token {head!r} in {text!r}")


def atoms(spec):
    """Flatten nested direct products into catalog atoms."""
    if isinstance(spec, DirectProduct):
        out = []
        for f in spec.factors:
            out.extend(atoms(f))
        return out
    return [spec]


def is_hamiltonian(spec):
    """Q8 times an odd-order abelian part times an elementary abelian 2-group."""
    parts = atoms(spec)
    q8s = [p for p in parts if isinstance(p, Q8)]
    if len(q8s) != 1:
        return False
    return all(isinstance(p, (Q8, ElemAbelian2)) or (isinstance(p, Cyclic) and p.n % 2 == 1)
               for p in parts)


def abelian_part(spec):
    """The non-Q8 atoms of a spec containing exactly one Q8 factor."""
    parts = atoms(spec)
    if sum(isinstance(p, Q8) for p in parts) != 1:
        raise ValueError(f"{spec} does not have exactly one Q8 factor")
    return [p for p in parts if not isinstance(p, Q8)]


def _prime_factors(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def elementary_divisors(parts):
    """Prime-power cyclic orders of an abelian catalog product."""
    divs = []
    for p in parts:
        if isinstance(p, Cyclic):
            divs.extend(q ** e for q, e in sorted(_prime_factors(p.n).items()))
        elif isinstance(p, ElemAbelian2):
            divs.extend([2] * p.k)
        elif isinstance(p, DirectProduct):
            divs.extend(elementary_divisors(atoms(p)))
        else:
            raise ValueError(f"{p} is not abelian")
    return sorted(divs)


# ---------------------------------------------------------------------------
# multiplication tables
# ---------------------------------------------------------------------------

def _q8_table():
    # element i + 4j stands for sigma^i tau^j
    t = np.zeros((8, 8), dtype=np.int64)
    for a in range(4):
        for b in range(2):
            for c in range(4):
                for d in range(2):
                    if b == 0:
                        i, j = (a + c) % 4, d
                    elif d == 0:
                        i, j = (a - c) % 4, 1
                    else:
                        i, j = (a - c + 2) % 4, 0
                    t[a + 4 * b, c + 4 * d] = i + 4 * j
    return t


@lru_cache(maxsize=None)
def _table_cached(spec):
    if isinstance(spec, Cyclic):
        idx = np.arange(spec.n)
        return (idx[:, None] + idx[None, :]) % spec.n
    if isinstance(spec, ElemAbelian2):
        idx = np.arange(2 ** spec.k)
        return idx[:, None] ^ idx[None, :]
    if isinstance(spec, Q8):
        return _q8_table()
    if isinstance(spec, DirectProduct):
        orders = [f.order for f in spec.factors]
        strides = [math.prod(orders[i + 1:]) for i in range(len(orders))]
        idx = np.arange(spec.order)
        table = np.zeros((spec.order, spec.order), dtype=np.int64)
        for f, stride, order in zip(spec.factors, strides, orders):
            comp = (idx // stride) % order
            table += stride * _table_cached(f)[comp[:, None], comp[None, :]]
        return table
    raise TypeError(f"unknown group spec {spec!r}")


def multiplication_table(spec):
    """``table[a, b]`` is the index of ``a * b``; identity is index 0."""
    if spec.order > TABLE_CAP:
        raise CapExceeded(f"group order {spec.order} exceeds table cap {TABLE_CAP}")
    table = _table_cached(spec)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _generators(spec):
    if isinstance(spec, Cyclic):
        return (1,) if spec.n > 1 else ()
    if isinstance(spec, ElemAbelian2):
        return tuple(1 << i for i in range(spec.k))
    if isinstance(spec, Q8):
        return (1, 4)
    orders = [f.order for f in spec.factors]
    gens = []
    for i, f in enumerate(spec.factors):
        stride = math.prod(orders[i + 1:])
        gens.extend(stride * g for g in _generators(f))
    return tuple(gens)


# ---------------------------------------------------------------------------
# table utilities
# ---------------------------------------------------------------------------

def inverses(table):
    return np.argmax(table == 0, axis=1)


def element_orders(table):
    n = table.shape[0]
    idx = np.arange(n)
    cur = idx.copy()
    orders = np.zeros(n, dtype=np.int64)
    for k in range(1, n + 1):
        done = (cur == 0) & (orders == 0)
        orders[done] = k
        if orders.all():
            break
        cur = table[cur, idx]
    return orders


def center(table):
    return np.flatnonzero((table == table.T).all(axis=1))


def closure(table, gens):
    """Subgroup generated by the elements ``gens``."""
    gens = [int(g) for g in gens]
    elems = [0]
    seen = {0}
    for x in elems:
        for g in gens:
            y = int(table[x, g])
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return frozenset(elems)


def derived_subgroup(table):
    inv = inverses(table)
    comms = table[table, table[np.ix_(inv, inv)]]
    return closure(table, np.unique(comms))


def generates(table, gens):
    return len(closure(table, gens)) == table.shape[0]


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups; ``rep`` is its smallest-key member."""
    rep: tuple
    members: tuple
    core: frozenset

    @property
    def order(self):
        return len(self.rep)


def _subgroups(table):
    """All subgroups, built by joining cyclic subgroups layer by layer."""
    n = table.shape[0]
    cyclic = {}
    for g in range(n):
        cyclic.setdefault(closure(table, [g]), g)
    cyc_list = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    trivial = frozenset([0])
    found = {trivial: ()}
    layer = [trivial]
    while layer:
        nxt = []
        for h in layer:
            for c, g in cyc_list:
                if c <= h:
                    continue
                gens = found[h] + (g,)
                j = closure(table, gens)
                if j not in found:
                    found[j] = gens
                    nxt.append(j)
        layer = nxt
    return set(found)


@lru_cache(maxsize=None)
def _subgroup_classes(spec):
    table = multiplication_table(spec)
    inv = inverses(table)
    n = table.shape[0]
    remaining = set(_subgroups(table))
    classes = []
    while remaining:
        h = min(remaining, key=lambda s: (len(s), sorted(s)))
        hs = np.array(sorted(h))
        conj = set()
        for g in range(n):
            conj.add(frozenset(table[table[g, hs], inv[g]].tolist()))
        members = sorted((tuple(sorted(c)) for c in conj))
        core = frozenset.intersection(*conj)
        classes.append(SubgroupClass(rep=members[0], members=tuple(members), core=core))
        remaining -= conj
    classes.sort(key=lambda c: (c.order, c.rep))
    return tuple(classes)


def subgroups_up_to_conjugacy(spec):
    """Conjugacy classes of subgroups, sorted by order then element set."""
    if spec.order > SUBGROUP_CAP:
        raise CapExceeded(f"group order {spec.order} exceeds subgroup cap {SUBGROUP_CAP}")
    return list(_subgroup_classes(spec))


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def coset_action_images(table, subgroup):
    """``(|G|, index)`` array: the action of every element on left cosets of ``subgroup``."""
    n = table.shape[0]
    h = np.array(sorted(subgroup))
    coset_id = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset_id[g] < 0:
            coset_id[table[g, h]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    return coset_id[table[:, reps]]


class Action:
    """A homomorphism from a catalog group into the symmetric group on ``degree`` points.

    ``images`` are the images of ``spec.generators``.  ``key`` records the
    multiset of subgroup classes (point stabilizers, one per orbit) when the
    action was produced by :func:`faithful_actions`.
    """

    def __init__(self, spec, degree, images, key=None, element_images=None):
        self.spec = spec
        self.degree = degree
        self.images = [p if isinstance(p, Perm) else Perm(p) for p in images]
        if len(self.images) != len(spec.generators):
            raise ValueError("one image per generator required")
        for p in self.images:
            if p.degree != degree:
                raise ValueError("generator image has the wrong degree")
        self.key = key
        self._elements = element_images
        if self._elements is None:
            self._elements = _extend_to_elements(spec.table, spec.generators,
                                                 [p.images for p in self.images], degree)
            if self._elements is None:
                raise ValueError("generator images do not define a homomorphism")

    def element_images(self):
        return self._elements

    def kernel(self):
        ident = np.arange(self.degree)
        return [int(g) for g in np.flatnonzero((self._elements == ident).all(axis=1))]

    @property
    def faithful(self):
        return self.kernel() == [0]

    def satisfies_relations(self):
        e = self._elements
        table = self.spec.table
        return bool(np.array_equal(e[:, e].reshape(-1, self.degree),
                                   e[table.reshape(-1)]))

    def image_group(self):
        return PermGroup(self.degree, self.images)

    def orbit_sizes(self):
        return sorted((len(o) for o in self.image_group().orbits()), reverse=True)

    def __repr__(self):
        gens = ", ".join(str(p) for p in self.images)
        return f"Action({self.spec}, degree={self.degree}, [{gens}])"


def _extend_to_elements(table, gens, images, degree):
    """Images of all elements, or None if the generator images are inconsistent."""
    n = table.shape[0]
    out = np.full((n, degree), -1, dtype=np.int64)
    out[0] = np.arange(degree)
    queue = [0]
    for x in queue:
        for g, img in zip(gens, images):
            y = int(table[g, x])
            val = img[out[x]]
            if out[y, 0] < 0:
                out[y] = val
                queue.append(y)
            elif not np.array_equal(out[y], val):
                return None
    if len(queue) != n:
        raise ValueError("generators do not generate the group")
    return out


def _action_from_classes(spec, classes, key):
    table = spec.table
    blocks = [coset_action_images(table, classes[i].rep) for i in key]
    offsets = np.cumsum([0] + [b.shape[1] for b in blocks])
    elems = np.concatenate([b + off for b, off in zip(blocks, offsets[:-1])], axis=1)
    degree = int(offsets[-1])
    images = [Perm(elems[g], check=False) for g in spec.generators]
    return Action(spec, degree, images, key=tuple(key), element_images=elems)


def _faithful_keys(classes, order, n):
    """Multisets of class indices (non-decreasing) with index sum ``n`` and trivial kernel."""
    indices = [order // c.order for c in classes]
    everything = frozenset(range(order))

    def rec(start, remaining, kernel, chosen):
        if remaining == 0:
            if kernel == frozenset([0]):
                yield tuple(chosen)
            return
        for i in range(start, len(classes)):
            if indices[i] <= remaining:
                chosen.append(i)
                yield from rec(i, remaining - indices[i], kernel & classes[i].core, chosen)
                chosen.pop()

    yield from rec(0, n, everything, [])


def iter_faithful_actions(spec, n, degree_cap=ACTION_DEGREE_CAP):
    if n > degree_cap:
        raise CapExceeded(f"degree {n} exceeds action cap {degree_cap}")
    if spec.order > SUBGROUP_CAP:
        raise CapExceeded(f"group order {spec.order} exceeds subgroup cap {SUBGROUP_CAP}")
    classes = _subgroup_classes(spec)
    for key in _faithful_keys(classes, spec.order, n):
        yield _action_from_classes(spec, classes, key)


def faithful_actions(spec, n, degree_cap=ACTION_DEGREE_CAP):
    """One action per equivalence class of faithful actions on exactly ``n`` points.

    Each orbit is a coset action on a conjugacy class of point stabilizers,
    so the multiset of classes identifies the action up to equivalence.
    Orbits are listed from the largest to the smallest.
    """
    return list(iter_faithful_actions(spec, n, degree_cap))


def mu_search(spec, n_max):
    """Smallest degree of a faithful permutation representation, or None."""
    if n_max > ACTION_DEGREE_CAP:
        raise CapExceeded(f"n_max {n_max} exceeds action cap {ACTION_DEGREE_CAP}")
    classes = _subgroup_classes(spec) if spec.order <= SUBGROUP_CAP else None
    if classes is None:
        raise CapExceeded(f"group order {spec.order} exceeds subgroup cap {SUBGROUP_CAP}")
    for n in range(1, n_max + 1):
        if next(_faithful_keys(classes, spec.order, n), None) is not None:
            return n
    return None


# ---------------------------------------------------------------------------
# embeddings into S_k
# ---------------------------------------------------------------------------

def _partitions(k, largest=None):
    if largest is None:
        largest = k
    if k == 0:
        yield []
        return
    for part in range(min(k, largest), 0, -1):
        for rest in _partitions(k - part, part):
            yield [part] + rest


def _cycle_type_rep(parts, k):
    img = np.arange(k)
    pos = 0
    for part in parts:
        for i in range(part):
            img[pos + i] = pos + (i + 1) % part
        pos += part
    return img


def _hom_on_subgroup(table, gens, images, degree):
    """Extend generator images over ``<gens>``; None if inconsistent or not injective."""
    phi = {0: np.arange(degree)}
    queue = [0]
    for x in queue:
        for g, img in zip(gens, images):
            y = int(table[g, x])
            val = img[phi[x]]
            if y not in phi:
                phi[y] = val
                queue.append(y)
            elif not np.array_equal(phi[y], val):
                return None
    if len({v.tobytes() for v in phi.values()}) != len(phi):
        return None
    return phi


def _search_image(k, constraints, power, order):
    """Backtrack a permutation ``p`` of ``k`` points.

    ``constraints`` holds pairs ``(A, B)`` demanding ``p A = B p``;
    ``power`` is ``(m, C)`` demanding ``p^m = C``; every cycle length of
    ``p`` must divide ``order``.
    """
    p = [-1] * k
    pinv = [-1] * k
    m, target = power

    def assign(x, y, trail):
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if p[a] >= 0 or pinv[b] >= 0:
                if p[a] != b:
                    return False
                continue
            p[a] = b
            pinv[b] = a
            trail.append(a)
            for A, B, Ainv, Binv in constraints:
                stack.append((int(A[a]), int(B[b])))
                stack.append((int(Ainv[a]), int(Binv[b])))
            # power constraint: follow the chain as far as it is defined
            if m == 2:
                stack.append((b, int(target[a])))
                stack.append((int(pinv_target[b]), a))
        return True

    pinv_target = np.empty(k, dtype=np.int64)
    pinv_target[target] = np.arange(k)

    def consistent():
        for x in range(k):
            y = x
            steps = 0
            while steps < m and y >= 0:
                y = p[y]
                steps += 1
            if y >= 0 and steps == m and y != target[x]:
                return False
        seen = set()
        for x in range(k):
            if x in seen or p[x] < 0:
                continue
            length, y = 1, p[x]
            seen.add(x)
            while y != x and y >= 0:
                seen.add(y)
                y = p[y]
                length += 1
            if y == x and order % length:
                return False
        return True

    def rec():
        try:
            x = p.index(-1)
        except ValueError:
            yield np.array(p)
            return
        for y in range(k):
            if pinv[y] >= 0:
                continue
            trail = []
            if assign(x, y, trail) and consistent():
                yield from rec()
            for a in trail:
                pinv[p[a]] = -1
                p[a] = -1

    yield from rec()


def find_embedding(spec, k):
    """Generator images of an injective homomorphism ``spec -> S_k``, or None.

    Returns ``(images, exhaustive)``; ``exhaustive`` is False when ``k``
    exceeds the backtracking cap and the answer came from coset actions.
    """
    if k < 1:
        return None, True
    if k > EMBED_EXHAUSTIVE_CAP:
        mu = mu_search(spec, min(k, ACTION_DEGREE_CAP))
        if mu is None:
            return None, False
        act = next(iter_faithful_actions(spec, mu))
        pad = [np.concatenate([p.images, np.arange(mu, k)]) for p in act.images]
        return [Perm(p, check=False) for p in pad], False
    table = spec.table
    gens = list(spec.generators)
    if not gens:
        return [], True
    orders = element_orders(table)
    found = _embed_rec(table, gens, orders, k, [])
    if found is None:
        return None, True
    return [Perm(p, check=False) for p in found], True


def _embed_rec(table, gens, orders, k, chosen):
    j = len(chosen)
    if j == len(gens):
        phi = _hom_on_subgroup(table, gens, chosen, k)
        if phi is not None and len(phi) == table.shape[0]:
            return list(chosen)
        return None
    g = int(gens[j])
    if j == 0:
        # the first image is fixed up to conjugacy in S_k
        candidates = (_cycle_type_rep(parts, k) for parts in _partitions(k)
                      if math.lcm(*parts) == orders[g])
    else:
        prev = gens[:j]
        phi = _hom_on_subgroup(table, prev, chosen, k)
        inv = inverses(table)
        sub = set(phi)
        constraints = []
        for h, img in zip(prev, chosen):
            conj = int(table[table[g, h], inv[g]])
            if conj in sub:
                b = phi[conj]
                ainv = np.empty(k, dtype=np.int64)
                ainv[img] = np.arange(k)
                binv = np.empty(k, dtype=np.int64)
                binv[b] = np.arange(k)
                constraints.append((img, b, ainv, binv))
        m, x = 1, g
        while x not in sub:
            x = int(table[x, g])
            m += 1
        if m == 1:
            candidates = [phi[x]]
        else:
            candidates = _search_image(k, constraints, (m, phi[x]), int(orders[g]))
    for cand in candidates:
        chosen.append(cand)
        ok = _hom_on_subgroup(table, gens[:j + 1], chosen, k) is not None
        if ok:
            result = _embed_rec(table, gens, orders, k, chosen)
            if result is not None:
                return result
        chosen.pop()
    return None


def embed_check(spec, k):
    """True iff ``spec`` embeds in the symmetric group of degree ``k``."""
    images, _ = find_embedding(spec, k)
    return images is not None


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def perm_group_table(group):
    """Multiplication table of a permutation group and its element array."""
    if group.order > TABLE_CAP:
        raise CapExceeded(f"group order {group.order} exceeds table cap {TABLE_CAP}")
    elems = group.element_array()
    base = list(group.base) or [0]
    keys = np.ascontiguousarray(elems[:, base])
    void = np.dtype((np.void, keys.dtype.itemsize * keys.shape[1]))
    kv = keys.view(void).ravel()
    order = np.argsort(kv)
    sorted_kv = kv[order]
    prod_keys = np.ascontiguousarray(elems[:, elems[:, base]].reshape(-1, len(base)))
    pk = prod_keys.view(void).ravel()
    table = order[np.searchsorted(sorted_kv, pk)].reshape(len(elems), len(elems))
    return table, elems


def _invariants(table):
    orders = element_orders(table)
    n = table.shape[0]
    centralizer = (table == table.T).sum(axis=1)
    elem_inv = list(zip(orders.tolist(), centralizer.tolist()))
    return {
        "order": n,
        "orders": sorted(elem_inv),
        "center": len(center(table)),
        "derived": len(derived_subgroup(table)),
    }, elem_inv


def tables_isomorphic(table1, gens1, table2):
    """Decide isomorphism of two groups given by tables (``gens1`` generate the first)."""
    if table1.shape != table2.shape:
        return False
    inv1, elem1 = _invariants(table1)
    inv2, elem2 = _invariants(table2)
    if inv1 != inv2:
        return False
    gens1 = [int(g) for g in gens1]
    if not gens1:
        return table1.shape[0] == 1
    candidates = [[y for y in range(table2.shape[0]) if elem2[y] == elem1[g]] for g in gens1]
    n = table1.shape[0]

    def hom_ok(j, chosen):
        phi = {0: 0}
        queue = [0]
        for x in queue:
            for g, y in zip(gens1[:j], chosen):
                a = int(table1[g, x])
                val = int(table2[y, phi[x]])
                if a not in phi:
                    phi[a] = val
                    queue.append(a)
                elif phi[a] != val:
                    return None
        if len(set(phi.values())) != len(phi):
            return None
        return phi

    def rec(chosen):
        j = len(chosen)
        if j == len(gens1):
            phi = hom_ok(j, chosen)
            return phi is not None and len(phi) == n
        for y in candidates[j]:
            chosen.append(y)
            if hom_ok(j + 1, chosen) is not None and rec(chosen):
                return True
            chosen.pop()
        return False

    return rec([])


def isomorphic_to_spec(group, spec):
    """Decide whether a permutation group is abstractly isomorphic to ``spec``."""
    if spec.order > TABLE_CAP or group.order > TABLE_CAP:
        raise CapExceeded(f"isomorphism test capped at order {TABLE_CAP}")
    if group.order != spec.order:
        return False
    table, _ = perm_group_table(group)
    return tables_isomorphic(spec.table, spec.generators, table)
