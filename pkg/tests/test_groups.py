import itertools

import numpy as np
import pytest

from hamsym.groups import (
    Action, CapExceeded, Cyclic, DirectProduct, ElemAbelian2, Q8, elementary_divisors,
    embed_check, faithful_actions, find_embedding, is_hamiltonian, isomorphic_to_spec,
    multiplication_table, mu_search, parse_spec, subgroups_up_to_conjugacy,
)
from hamsym.perm import Perm, PermGroup, bsgs_build
from oracles import (
    brute_isomorphic_tables, brute_subgroups, element_orders, enumerate_group,
    quaternion_mul, quaternion_units, table_from_elements,
)

SIGMA = "(1,2,3,4)(5,6,7,8)"
TAU = "(1,7,3,5)(2,6,4,8)"


def involutions(table):
    return sum(1 for k in element_orders(table) if k == 2)


# -- catalog and tables ------------------------------------------------------

def test_parse_spec_grammar():
    assert parse_spec("q8") == Q8()
    assert parse_spec("c5") == Cyclic(5)
    assert parse_spec("e2^3") == ElemAbelian2(3)
    assert parse_spec("prod(q8, e2^2)") == DirectProduct(Q8(), ElemAbelian2(2))
    assert parse_spec("prod(q8,c3)").order == 24
    for bad in ("", "q9", "prod(q8", "prod()", "c0", "e2^", "prod(q8,c3))"):
        with pytest.raises(ValueError):
            parse_spec(bad)


@pytest.mark.parametrize("text", ["c1", "c6", "e2^3", "q8", "prod(q8,e2^1)", "prod(q8,c3)",
                                  "prod(c2,c4)", "prod(q8,e2^2)"])
def test_table_is_a_group(text):
    t = multiplication_table(parse_spec(text))
    n = t.shape[0]
    idx = np.arange(n)
    assert np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)
    assert all(sorted(row) == list(range(n)) for row in t.tolist())
    assert (t == 0).any(axis=1).all()
    assert np.array_equal(t[t[:, :, None], idx[None, None, :]], t[idx[:, None, None], t[None, :, :]])


def test_table_examples():
    assert multiplication_table(Cyclic(1)).shape == (1, 1)
    assert involutions(multiplication_table(Q8())) == 1
    assert involutions(multiplication_table(DirectProduct(Q8(), ElemAbelian2(1)))) == 3


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_hamiltonian_involution_count(k):
    spec = DirectProduct(Q8(), ElemAbelian2(k))
    assert involutions(multiplication_table(spec)) == 2 * (2 ** k - 1) + 1


def test_q8_presentation_and_quaternions():
    t = multiplication_table(Q8())
    s, u = Q8().generators
    s2 = int(t[s, s])
    assert int(t[s2, s2]) == 0
    assert int(t[u, u]) == s2
    s_inv = int(np.flatnonzero(t[s] == 0)[0])
    assert int(t[s, u]) == int(t[u, s_inv])
    quats = quaternion_units()
    assert brute_isomorphic_tables(t, table_from_elements(quats, quaternion_mul))


def test_table_cap():
    with pytest.raises(CapExceeded):
        multiplication_table(ElemAbelian2(10))


def test_hamiltonian_shapes():
    assert is_hamiltonian(parse_spec("prod(q8,c3,e2^2)"))
    assert not is_hamiltonian(parse_spec("prod(q8,c4)"))
    assert not is_hamiltonian(parse_spec("e2^3"))
    assert elementary_divisors([Cyclic(12), ElemAbelian2(2)]) == [2, 2, 3, 4]


# -- subgroups -----------------------------------------------------------------

def test_subgroup_examples():
    assert [c.order for c in subgroups_up_to_conjugacy(Cyclic(3))] == [1, 3]
    assert [c.order for c in subgroups_up_to_conjugacy(Q8())] == [1, 2, 4, 4, 4, 8]
    assert [c.order for c in subgroups_up_to_conjugacy(ElemAbelian2(2))] == [1, 2, 2, 2, 4]


@pytest.mark.parametrize("text", ["q8", "e2^2", "c6", "prod(c2,c4)"])
def test_subgroups_match_subset_closure(text):
    spec = parse_spec(text)
    table = multiplication_table(spec)
    classes = subgroups_up_to_conjugacy(spec)
    members = [frozenset(m) for c in classes for m in c.members]
    assert len(members) == len(set(members))
    assert set(members) == brute_subgroups(table)
    keys = [(c.order, c.rep) for c in classes]
    assert keys == sorted(keys)


# -- actions -------------------------------------------------------------------

def test_faithful_action_examples():
    acts = faithful_actions(Q8(), 8)
    assert len(acts) == 1 and acts[0].orbit_sizes() == [8]
    assert faithful_actions(Q8(), 7) == []
    acts = faithful_actions(Cyclic(2), 2)
    assert len(acts) == 1 and str(acts[0].images[0]) == "(1,2)"


@pytest.mark.parametrize("text,n", [("q8", 10), ("prod(q8,e2^1)", 10), ("c6", 7), ("e2^2", 6)])
def test_faithful_actions_are_faithful_homomorphisms(text, n):
    spec = parse_spec(text)
    for a in faithful_actions(spec, n):
        assert a.satisfies_relations()
        assert a.kernel() == [0]
        assert a.degree == n
        assert a.image_group().order == spec.order


def test_action_rejects_inconsistent_images():
    with pytest.raises(ValueError):
        Action(Cyclic(3), 2, [Perm.from_cycles("(1,2)", 2)])


def test_faithful_actions_cover_all_q8_actions_on_8_points():
    # every faithful Q8 action on 8 points is regular: enumerate them all
    q8 = Action(Q8(), 8, [Perm.from_cycles(SIGMA, 8), Perm.from_cycles(TAU, 8)])
    elements = enumerate_group([p.images for p in q8.images], 8)
    assert len(elements) == 8
    assert all(len(set(p)) == 8 for p in elements)


@pytest.mark.parametrize("text,expected", [("q8", 8), ("e2^1", 2), ("e2^2", 4), ("e2^3", 6),
                                           ("prod(q8,e2^1)", 10), ("prod(q8,e2^2)", 12)])
def test_mu_values(text, expected):
    assert mu_search(parse_spec(text), 24) == expected


def test_mu_not_found():
    assert mu_search(Q8(), 7) is None
    with pytest.raises(CapExceeded):
        mu_search(Q8(), 25)


# -- embeddings ----------------------------------------------------------------

def test_embed_examples():
    assert not embed_check(Q8(), 7)
    assert embed_check(Q8(), 8)
    assert not embed_check(Cyclic(4), 3)
    assert embed_check(Cyclic(4), 4)


def test_embed_witness_generates_q8():
    images, exhaustive = find_embedding(Q8(), 8)
    assert exhaustive
    elements = enumerate_group([p.images for p in images], 8)
    assert len(elements) == 8
    assert isomorphic_to_spec(PermGroup(8, images), Q8())


def _brute_embeds(spec, k):
    # every group here is generated by at most two elements, so scan pairs in S_k
    # and compare the element-order multiset (enough for these abelian targets)
    target = sorted(element_orders(multiplication_table(spec)))
    perms = [tuple(p) for p in itertools.permutations(range(k))]
    for a in perms:
        for b in perms:
            elems = enumerate_group([a, b], k)
            if len(elems) != spec.order:
                continue
            table = table_from_elements(sorted(elems), lambda x, y: tuple(x[i] for i in y))
            if sorted(element_orders(table)) == target:
                return True
    return False


@pytest.mark.parametrize("text,k", [("e2^2", 3), ("e2^2", 4), ("c6", 5), ("c6", 4), ("c1", 1),
                                    ("c4", 3)])
def test_embed_small_cases_against_symmetric_group(text, k):
    spec = parse_spec(text)
    assert embed_check(spec, k) == _brute_embeds(spec, k)


def test_embed_large_k_is_flagged_non_exhaustive():
    images, exhaustive = find_embedding(Q8(), 12)
    assert images is not None and not exhaustive


# -- isomorphism ---------------------------------------------------------------

def test_isomorphism_examples():
    q8 = bsgs_build([Perm.from_cycles(SIGMA, 8), Perm.from_cycles(TAU, 8)])
    assert isomorphic_to_spec(q8, Q8())
    assert isomorphic_to_spec(bsgs_build([Perm.from_cycles("(1,2)", 4), Perm.from_cycles("(3,4)", 4)]),
                              ElemAbelian2(2))
    assert not isomorphic_to_spec(bsgs_build([Perm.from_cycles("(1,2,3,4)", 4)]), ElemAbelian2(2))
    d4 = bsgs_build([Perm.from_cycles("(1,2,3,4)", 4), Perm.from_cycles("(1,3)", 4)])
    assert not isomorphic_to_spec(d4, Q8())


def test_isomorphism_invariant_under_conjugation():
    rng = np.random.default_rng(3)
    gens = [Perm.from_cycles(SIGMA, 8), Perm.from_cycles(TAU, 8)]
    for _ in range(10):
        c = Perm(rng.permutation(8))
        conj = [c * g * c.inverse() for g in gens]
        assert isomorphic_to_spec(bsgs_build(conj), Q8())
        assert not isomorphic_to_spec(bsgs_build(conj), DirectProduct(Cyclic(4), Cyclic(2)))
