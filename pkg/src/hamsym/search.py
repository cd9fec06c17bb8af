"""Edge orbits, orbit witnesses and exact automorphism-group realizability.

A graph on ``n`` vertices whose automorphism group contains the image of a
faithful action must have an edge set that is a union of edge orbits of
that action.  So the question "is there a graph on ``n`` vertices with
automorphism group exactly ``G``" reduces to a finite check per faithful
action class: either some permutation outside the image preserves every
edge orbit (an *orbit witness*, which then lies in the automorphism group
of every such union), or every union is inspected.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from ._accel import pair_orbit_labels
from .autgrp import AutSearch, Relation, automorphism_group
from .graph import Graph, decode_graph6, encode_graph6
from .groups import (
    CapExceeded, _action_from_classes, _faithful_keys, _subgroup_classes, isomorphic_to_spec,
    iter_faithful_actions, parse_spec,
)
from .perm import Perm, PermGroup

EXHAUSTIVE_N_CAP = 12
REALIZE_ORDER_CAP = 64
UNION_CAP = 2 ** 22
WITNESS_DEGREE_CAP = 16
ENUMERATE_CLOSURE_CAP = 200_000
FIND_N_CAP = 40
DEFAULT_BUDGET = 1_000_000
CERT_FORMAT = "hamsym-realizability-certificate"


# ---------------------------------------------------------------------------
# edge orbits
# ---------------------------------------------------------------------------

@dataclass
class EdgeOrbitPartition:
    """Orbits of an action on unordered vertex pairs, ordered by their smallest pair."""
    action: object
    orbits: list

    @property
    def sizes(self):
        return [len(o) for o in self.orbits]

    def labels(self):
        """``(n, n)`` symmetric matrix: orbit index + 1 for each pair, 0 on the diagonal."""
        n = self.action.degree
        m = np.zeros((n, n), dtype=np.int64)
        for i, orb in enumerate(self.orbits):
            a = np.asarray(orb).reshape(-1, 2)
            m[a[:, 0], a[:, 1]] = i + 1
            m[a[:, 1], a[:, 0]] = i + 1
        return m

    def union_edges(self, mask):
        chosen = [self.orbits[i] for i in range(len(self.orbits)) if mask >> i & 1]
        return [tuple(p) for orb in chosen for p in orb]

    def union_graph(self, mask):
        return Graph(self.action.degree, self.union_edges(mask))


def _images_array(action):
    return np.array([p.images for p in action.images], dtype=np.int64).reshape(-1, action.degree)


def edge_orbits(action):
    """Partition of all vertex pairs into orbits of the action."""
    if not action.faithful:
        raise ValueError("edge orbits are only defined here for faithful actions")
    n = action.degree
    if n < 2:
        return EdgeOrbitPartition(action, [])
    labels = pair_orbit_labels(_images_array(action), n)
    iu, ju = np.triu_indices(n, 1)
    lab = labels[iu, ju]
    orbits = {}
    for a, b, l in zip(iu.tolist(), ju.tolist(), lab.tolist()):
        orbits.setdefault(l, []).append((a, b))
    return EdgeOrbitPartition(action, [orbits[k] for k in sorted(orbits)])


# ---------------------------------------------------------------------------
# orbit witnesses
# ---------------------------------------------------------------------------

def orbit_closure(partition):
    """The group of all permutations mapping every edge orbit onto itself."""
    n = partition.action.degree
    if n < 2:
        return PermGroup(max(n, 1), [])
    search = AutSearch(Relation.from_matrix(partition.labels()), canonical=False).run()
    return search.group()


def _rows_in(rows, reference):
    """Boolean mask: which rows of ``rows`` occur among the rows of ``reference``."""
    void = np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))
    a = np.ascontiguousarray(rows).view(void).ravel()
    b = np.ascontiguousarray(reference).view(void).ravel()
    return np.isin(a, b)


def _witness_order(cands, action):
    """Candidate order, most preferred first.

    Preference: normalizes the image, moves a point of every non-trivial
    orbit, smallest support, smallest support set, smallest image array.
    """
    n = cands.shape[1]
    elems = action.element_images().astype(cands.dtype)
    inv = np.argsort(cands, axis=1)
    normal = np.ones(len(cands), dtype=bool)
    for p in action.images:
        conj = np.take_along_axis(cands, p.images[inv], axis=1)
        normal &= _rows_in(conj, elems)
    moved = cands != np.arange(n)
    meets = np.ones(len(cands), dtype=bool)
    for orb in action.image_group().orbits():
        if len(orb) > 1:
            meets &= moved[:, orb].any(axis=1)
    padded = np.where(moved, np.arange(n), n)
    padded.sort(axis=1)
    keys = [cands[:, j] for j in range(n - 1, -1, -1)]
    keys += [padded[:, j] for j in range(n - 1, -1, -1)]
    keys += [moved.sum(axis=1), ~meets, ~normal]
    return np.lexsort(keys)


def orbit_witness(action, partition=None, cap=WITNESS_DEGREE_CAP):
    """A permutation outside the image that fixes every edge orbit setwise, or None.

    All permutations preserving every edge orbit form a group containing
    the image; it is computed exactly as the automorphism group of the
    complete graph whose edges are coloured by orbit.  If it is larger than
    the image, the preferred element outside the image is returned (see
    :func:`_witness_order`).  When that group is too large to list, the
    candidates are its strong generators instead.
    """
    if action.degree > cap:
        raise CapExceeded(f"degree {action.degree} exceeds witness cap {cap}")
    partition = partition or edge_orbits(action)
    image = action.image_group()
    closure = orbit_closure(partition)
    if closure.order == image.order:
        return None
    if closure.order <= ENUMERATE_CLOSURE_CAP:
        cands = closure.element_array()
    else:
        cands = np.array([g.images for g in closure.strong_generators()])
    outside = ~_rows_in(cands, action.element_images().astype(cands.dtype))
    for i in _witness_order(cands, action):
        if outside[i]:
            gamma = Perm(cands[i], check=False)
            _check_witness(gamma, image, partition)
            return gamma
    raise AssertionError("orbit-preserving group is larger than the image but no element lies outside")


def _check_witness(gamma, image, partition):
    if image.contains(gamma):
        raise AssertionError("witness lies in the image")
    g = gamma.images
    for orb in partition.orbits:
        s = set(orb)
        for a, b in orb:
            x, y = int(g[a]), int(g[b])
            if (min(x, y), max(x, y)) not in s:
                raise AssertionError("witness moves a pair out of its orbit")


def is_orbit_witness(gamma, image, partition):
    try:
        _check_witness(gamma, image, partition)
    except AssertionError:
        return False
    return True


# ---------------------------------------------------------------------------
# realizability
# ---------------------------------------------------------------------------

def _union_relation(pairs, n, mask):
    chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
    if chosen:
        e = np.concatenate(chosen)
    else:
        e = np.zeros((0, 2), dtype=np.int64)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    return Relation(n, rows, cols, np.ones(rows.size, dtype=np.int64))


def union_masks(m):
    """One union from each complementary pair: those containing the last orbit."""
    if m == 0:
        return range(1)
    top = 1 << (m - 1)
    return range(top, 2 * top)


def union_aut_order(partition, mask):
    n = partition.action.degree
    if n < 2:
        return 1
    pairs = [np.asarray(o, dtype=np.int64).reshape(-1, 2) for o in partition.orbits]
    return AutSearch(_union_relation(pairs, n, mask), canonical=False).run().group().order


@dataclass
class ActionEvidence:
    action: object
    partition: EdgeOrbitPartition
    kind: str                      # "gamma" | "table" | "realizes" | "inconclusive"
    gamma: Perm = None
    table: list = field(default_factory=list)
    mask: int = None

    def to_json(self):
        out = {
            "key": list(self.action.key),
            "orbit_sizes": self.action.orbit_sizes(),
            "generators": [str(p) for p in self.action.images],
            "edge_orbits": [[[a + 1, b + 1] for a, b in orb] for orb in self.partition.orbits],
        }
        ev = {"kind": self.kind}
        if self.kind == "gamma":
            ev["gamma"] = str(self.gamma)
        elif self.kind == "table":
            ev["complement_halved"] = True
            ev["table"] = [[m, o] for m, o in self.table]
        elif self.kind == "realizes":
            ev["mask"] = self.mask
        out["evidence"] = ev
        return out


@dataclass
class RealizabilityVerdict:
    spec: object
    n: int
    outcome: str                   # "realizable" | "not_realizable" | "inconclusive"
    evidence: list
    witness: Graph = None

    @property
    def realizable(self):
        return self.outcome == "realizable"

    def certificate(self):
        doc = {
            "format": CERT_FORMAT,
            "version": __version__,
            "group": self.spec.text(),
            "order": self.spec.order,
            "n": self.n,
            "outcome": self.outcome,
            "actions": [e.to_json() for e in self.evidence],
        }
        if self.witness is not None:
            doc["witness"] = encode_graph6(self.witness)
        return doc

    def certificate_text(self):
        return json.dumps(self.certificate(), sort_keys=True, separators=(",", ":")) + "\n"


def _examine_action(action, order, union_cap):
    partition = edge_orbits(action)
    if action.degree <= WITNESS_DEGREE_CAP:
        gamma = orbit_witness(action, partition)
        if gamma is not None:
            return ActionEvidence(action, partition, "gamma", gamma=gamma)
    masks = union_masks(len(partition.orbits))
    if len(masks) > union_cap:
        return ActionEvidence(action, partition, "inconclusive")
    table = []
    for mask in masks:
        aut = union_aut_order(partition, mask)
        if aut == order:
            return ActionEvidence(action, partition, "realizes", mask=mask)
        table.append((mask, aut))
    return ActionEvidence(action, partition, "table", table=table)


def decide_realizable(spec, n, threads=1, union_cap=UNION_CAP):
    """Is there a graph on ``n`` vertices whose automorphism group is exactly ``spec``?

    Unions are enumerated only up to complement (the orbit with the largest
    index is always included), since a graph and its complement share their
    automorphism group.
    """
    if spec.order > REALIZE_ORDER_CAP:
        raise CapExceeded(f"group order {spec.order} exceeds {REALIZE_ORDER_CAP}")
    if n > EXHAUSTIVE_N_CAP:
        raise CapExceeded(f"n = {n} exceeds the certification cap {EXHAUSTIVE_N_CAP}")
    if n < 1:
        raise ValueError("n must be positive")
    actions = list(iter_faithful_actions(spec, n))

    def work(action):
        return _examine_action(action, spec.order, union_cap)

    if threads > 1 and len(actions) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            evidence = list(pool.map(work, actions))
    else:
        evidence = []
        for action in actions:
            evidence.append(work(action))
            if evidence[-1].kind == "realizes":
                break
    for ev in evidence:
        if ev.kind == "realizes":
            g = ev.partition.union_graph(ev.mask)
            if not isomorphic_to_spec(automorphism_group(g), spec):
                raise AssertionError("realizing union failed its isomorphism check")
            return RealizabilityVerdict(spec, n, "realizable", [ev], witness=g)
    if any(ev.kind == "inconclusive" for ev in evidence):
        return RealizabilityVerdict(spec, n, "inconclusive", evidence)
    return RealizabilityVerdict(spec, n, "not_realizable", evidence)


# ---------------------------------------------------------------------------
# certificate verification
# ---------------------------------------------------------------------------

_CERT_KEYS = {"format", "version", "group", "order", "n", "outcome", "actions", "witness"}
_ACTION_KEYS = {"key", "orbit_sizes", "generators", "edge_orbits", "evidence"}
_EVIDENCE_KEYS = {"gamma": {"kind", "gamma"}, "table": {"kind", "complement_halved", "table"}}


def verify_certificate(doc):
    """Re-check a certificate; returns ``(ok, problems)``.

    Recomputes the list of faithful action classes, each action's edge
    orbits, the witness properties, and every table entry.
    """
    problems = []
    try:
        spec = parse_spec(doc["group"])
        n = int(doc["n"])
        outcome = doc["outcome"]
        actions = doc["actions"]
        if not isinstance(actions, list) or not all(isinstance(a, dict) for a in actions):
            raise TypeError("actions must be a list of objects")
    except (KeyError, TypeError, ValueError) as exc:
        return False, [f"malformed certificate: {exc}"]
    if doc.get("format") != CERT_FORMAT:
        problems.append("unknown certificate format")
    if doc.get("order") != spec.order:
        problems.append("group order does not match the group")
    if doc["group"] != spec.text():
        problems.append("group is not written in canonical form")
    extra = set(doc) - _CERT_KEYS
    if extra:
        problems.append(f"unexpected fields {sorted(extra)}")
    classes = _subgroup_classes(spec)
    expected_keys = [list(k) for k in _faithful_keys(classes, spec.order, n)]

    if outcome == "realizable":
        if "witness" not in doc:
            return False, problems + ["realizable certificate without witness"]
        try:
            g = decode_graph6(doc["witness"])
        except ValueError as exc:
            return False, problems + [f"bad witness: {exc}"]
        if g.n != n:
            problems.append("witness has the wrong number of vertices")
        elif not isomorphic_to_spec(automorphism_group(g), spec):
            problems.append("witness automorphism group is not the group")
        return not problems, problems

    if outcome != "not_realizable":
        return False, problems + [f"outcome {outcome!r} carries no proof"]
    keys = [a.get("key") for a in actions]
    if keys != expected_keys:
        problems.append("action classes listed do not match the faithful action classes")
        return False, problems
    for idx, entry in enumerate(actions):
        try:
            found = _verify_action(spec, classes, entry)
        except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
            found = [f"unreadable entry: {exc!r}"]
        problems += [f"action {idx}: {p}" for p in found]
    return not problems, problems


def _verify_action(spec, classes, entry):
    problems = []
    if set(entry) != _ACTION_KEYS:
        problems.append("action entry has missing or unexpected fields")
    action = _action_from_classes(spec, classes, tuple(entry["key"]))
    gens = [str(p) for p in action.images]
    if entry.get("generators") != gens:
        problems.append("generator images differ from the recomputed action")
    if entry.get("orbit_sizes") != action.orbit_sizes():
        problems.append("orbit sizes differ from the recomputed action")
    partition = edge_orbits(action)
    listed = [[tuple(p) for p in orb] for orb in entry.get("edge_orbits", [])]
    actual = [[(a + 1, b + 1) for a, b in orb] for orb in partition.orbits]
    if listed != actual:
        problems.append("edge orbits differ from the recomputed partition")
        return problems
    ev = entry.get("evidence", {})
    kind = ev.get("kind")
    if set(ev) != _EVIDENCE_KEYS.get(kind, set(ev)):
        problems.append("evidence has missing or unexpected fields")
    if kind == "gamma":
        try:
            gamma = Perm.from_cycles(ev["gamma"], action.degree)
        except (KeyError, ValueError) as exc:
            return problems + [f"unreadable witness: {exc}"]
        if not is_orbit_witness(gamma, action.image_group(), partition):
            problems.append("witness is in the image or moves a pair out of its orbit")
    elif kind == "table":
        if ev.get("complement_halved") is not True:
            problems.append("union table must be complement-halved")
        table = ev.get("table", [])
        masks = [row[0] for row in table]
        if masks != list(union_masks(len(partition.orbits))):
            problems.append("union table does not list every union up to complement")
            return problems
        for mask, order in table:
            actual_order = union_aut_order(partition, mask)
            if actual_order != order:
                problems.append(f"union {mask}: automorphism group order {actual_order}, listed {order}")
            elif order <= spec.order:
                problems.append(f"union {mask} realizes the group")
    else:
        problems.append(f"evidence kind {kind!r} does not prove non-realizability")
    return problems


# ---------------------------------------------------------------------------
# sweeps and randomized search
# ---------------------------------------------------------------------------

@dataclass
class SweepRow:
    n: int
    outcome: str
    certified: bool
    verdict: object = None
    witness: Graph = None


def alpha_sweep(spec, n_max, threads=1, budget=DEFAULT_BUDGET, seed=0):
    """Verdicts for ``n = 1..n_max``; rows above the certification cap are search-only."""
    rows = []
    for n in range(1, n_max + 1):
        if n <= EXHAUSTIVE_N_CAP:
            verdict = decide_realizable(spec, n, threads=threads)
            rows.append(SweepRow(n, verdict.outcome, verdict.outcome != "inconclusive",
                                 verdict, verdict.witness))
        else:
            g = find_graph_with_aut(spec, n, budget=budget, seed=seed, threads=threads)
            rows.append(SweepRow(n, "realizable" if g is not None else "not_found", False, None, g))
    return rows


def first_realizable(rows):
    for row in rows:
        if row.outcome == "realizable":
            return row.n
    return None


def _sample_rng(seed, index):
    # counter-based stream per sample: independent of batching and threads
    return np.random.Generator(np.random.Philox(key=seed, counter=index))


def _classify(action, order):
    """Edge orbits of an action and whether any union could have order ``order``."""
    part = edge_orbits(action)
    live = orbit_closure(part).order == order
    pairs = [np.asarray(o, dtype=np.int64).reshape(-1, 2) for o in part.orbits]
    return live, part, pairs


def live_actions(spec, n, threads=1):
    """Faithful actions on ``n`` points admitting no orbit witness, with their edge orbits."""
    actions = list(iter_faithful_actions(spec, n, degree_cap=FIND_N_CAP))

    def work(action):
        return _classify(action, spec.order)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            info = list(pool.map(work, actions))
    else:
        info = [work(a) for a in actions]
    return [(a, part, pairs) for a, (live, part, pairs) in zip(actions, info) if live]


def find_graph_with_aut(spec, n, budget=DEFAULT_BUDGET, seed=0, threads=1, batch=256):
    """Random search for a graph on ``n`` vertices with automorphism group ``spec``.

    Faithful actions whose edge orbits admit a witness are discarded first
    (none of their unions can work).  Each sample then picks one of the
    remaining actions and a uniformly random union of its edge orbits.
    Sample ``i`` draws from its own counter-based stream, so the result is
    the same for any thread count: the first hit in sample order, returned
    as the sparser of the graph and its complement.
    """
    if spec.order > REALIZE_ORDER_CAP:
        raise CapExceeded(f"group order {spec.order} exceeds {REALIZE_ORDER_CAP}")
    if n > FIND_N_CAP:
        raise CapExceeded(f"n = {n} exceeds {FIND_N_CAP}")
    if n < 1:
        return None
    if n == 1:
        return Graph(1, ()) if spec.order == 1 else None
    live = live_actions(spec, n, threads)
    if not live:
        return None

    def sample(index):
        rng = _sample_rng(seed, index)
        i = int(rng.integers(len(live)))
        pairs = live[i][2]
        bits = rng.integers(0, 2, size=len(pairs))
        mask = sum(1 << int(j) for j in np.flatnonzero(bits))
        order = AutSearch(_union_relation(pairs, n, mask), canonical=False).run().group().order
        return (i, mask) if order == spec.order else None

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for start in range(0, budget, batch):
            todo = range(start, min(start + batch, budget))
            results = executor.map(sample, todo) if executor else map(sample, todo)
            for res in results:
                if res is None:
                    continue
                i, mask = res
                g = live[i][1].union_graph(mask)
                if isomorphic_to_spec(automorphism_group(g), spec):
                    comp = g.complement()
                    return comp if len(comp.edges) < len(g.edges) else g
    finally:
        if executor is not None:
            executor.shutdown()
    return None


__all__ = [
    "EdgeOrbitPartition", "RealizabilityVerdict", "SweepRow", "alpha_sweep", "decide_realizable",
    "edge_orbits", "find_graph_with_aut", "first_realizable", "live_actions", "orbit_closure", "orbit_witness",
    "union_aut_order", "verify_certificate",
]
