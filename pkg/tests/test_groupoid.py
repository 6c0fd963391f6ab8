import random

import numpy as np
import pytest

from wildram.errors import InvalidGroupoid, NotMultiplicative, PreconditionError
from wildram.groupoid import (
    SMALL_GROUPS,
    FiniteGroupoid,
    PaddedSet,
    ProductSet,
    SubObject,
    additive_squares,
    all_maps,
    chains_within,
    compose,
    connected_groupoid,
    discrete_groupoid,
    group_groupoid,
    groupoid_from,
    identity_chain,
    is_morphism_multiplicative,
    is_multiplicative,
    nerve,
    nerve_functoriality,
    pair_groupoid,
    product_to_nerve,
    random_chain,
    random_groupoid,
    sampled_functoriality,
    telescoping_product,
)


def test_small_groups_have_expected_orders():
    orders = {name: len(g) for name, g in SMALL_GROUPS.items()}
    assert orders == {"C1": 1, "C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6, "V4": 4, "S3": 6}
    assert group_groupoid("S3").is_group()
    assert not pair_groupoid(2).is_group()


def test_validation_rejects_broken_tables():
    G = group_groupoid("C3")
    mu = G.mu.copy()
    mu[1, 1] = 1
    with pytest.raises(InvalidGroupoid):
        FiniteGroupoid(G.s, G.t, G.e, mu, G.iota)
    with pytest.raises(InvalidGroupoid):
        FiniteGroupoid(G.s, G.t, G.e, G.mu, [0, 1, 2])
    with pytest.raises(InvalidGroupoid):
        FiniteGroupoid.from_dict({"objects": ["a"]})


def test_json_round_trip():
    G = connected_groupoid(2, SMALL_GROUPS["C2"])
    H = FiniteGroupoid.from_json(G.to_json())
    assert H.same_tables(G) and H.to_json() == G.to_json()


def test_map_enumeration():
    assert all_maps(1, 2).shape == (9, 2)
    assert compose((2, 0, 1), (1, 1, 0)) == (0, 0, 2)
    squares = list(additive_squares(3))
    assert all(len(sq[5]) == sq[0] + 1 and len(sq[6]) == sq[1] + 1 for sq in squares)
    # n = 2: (m, l) = (1, 1), four gluings; n = 3: 2 * 6 = 12
    assert len(squares) == 4 + 12


def test_nerve_levels():
    G = pair_groupoid(3)
    O = nerve(G)
    assert [O.size(n) for n in range(5)] == [3 ** (n + 1) for n in range(5)]
    assert O.size(1) == G.n_morphisms
    O = nerve(group_groupoid("S3"))
    assert [O.size(n) for n in range(5)] == [1, 6, 36, 216, 1296]
    O = nerve(group_groupoid("C2"), N=3)
    assert [O.size(n) for n in range(4)] == [1, 2, 4, 8]
    O = nerve(discrete_groupoid(3))
    assert all(O.size(n) == 3 for n in range(5))


def test_one_object_gives_a_group():
    for name in ("C4", "V4", "S3"):
        H = groupoid_from(nerve(group_groupoid(name)))
        assert H.is_group() and np.array_equal(H.s, H.t)


def test_nerve_round_trip_small():
    for G in [group_groupoid("S3"), pair_groupoid(2), discrete_groupoid(3), connected_groupoid(2, SMALL_GROUPS["C3"])]:
        O = nerve(G)
        assert is_multiplicative(O)
        assert groupoid_from(O).same_tables(G)


def test_groupoid_from_needs_level_three():
    O = nerve(group_groupoid("C2"), N=2)
    with pytest.raises(PreconditionError):
        groupoid_from(O)


def test_product_set_is_a_nerve():
    image = [0, 0, 1, 0]
    prod = ProductSet(image, N=4)
    assert is_multiplicative(prod)
    G = groupoid_from(prod)
    assert G.n_objects == 4 and G.n_morphisms == 3 * 3 + 1
    # tuples embed into chains of the pair groupoid on all of X, compatibly with pulls
    X = len(image)
    pair_nerve = nerve(pair_groupoid(X))
    pair_index = np.arange(X * X).reshape(X, X)
    for n in range(3):
        emb_n = product_to_nerve(prod, pair_nerve, n, pair_index)
        assert len(np.unique(emb_n)) == prod.size(n)
        for m in range(3):
            for f in map(tuple, all_maps(m, n)):
                emb_m = product_to_nerve(prod, pair_nerve, m, pair_index)
                lhs = emb_m[prod.pull(f, n, np.arange(prod.size(n)))]
                rhs = pair_nerve.pull(f, n, emb_n)
                assert np.array_equal(lhs, rhs)


def test_padded_set_is_functorial_but_not_multiplicative():
    O = nerve(group_groupoid("C2"))
    padded = PaddedSet(O, 2, identity_chain(O, 2))
    assert sampled_functoriality(padded, trials=300, seed=1) == 300
    assert not is_multiplicative(padded)
    with pytest.raises(NotMultiplicative):
        groupoid_from(padded)


def test_sub_objects():
    G = connected_groupoid(2, SMALL_GROUPS["C2"])
    O = nerve(G)
    # full subgroupoid on object 0: closed under composition and inverse
    sub = {a for a in range(G.n_morphisms) if G.s[a] == 0 and G.t[a] == 0}
    Q = chains_within(O, sub)
    assert is_multiplicative(Q)
    assert is_morphism_multiplicative(Q)
    # the identities alone form a subgroupoid too
    ids = set(G.e.tolist())
    assert is_morphism_multiplicative(chains_within(O, ids))


def test_sub_groupoid_inclusions_are_multiplicative_iff_source_is():
    rng = random.Random(8)
    for _ in range(30):
        G = random_groupoid(rng, max_objects=3, max_morphisms=12)
        allowed = {a for a in range(G.n_morphisms) if rng.random() < 0.6} | set(G.e.tolist())
        Q = chains_within(nerve(G), allowed)
        assert is_multiplicative(Q) == is_morphism_multiplicative(Q)


def test_non_multiplicative_inclusion():
    # chains meeting at most two of three objects: closed under every pull,
    # but 0 -> 1 -> 2 has all its edges inside while not being a member
    O = nerve(pair_groupoid(3))
    members = []
    for n in range(O.N + 1):
        V = O.vertices(n, np.arange(O.size(n)))
        members.append(np.nonzero([len(set(col)) <= 2 for col in V.T])[0])
    Q = SubObject(O, members)
    assert sampled_functoriality(Q, trials=200, seed=3) == 200
    assert not is_morphism_multiplicative(Q)
    assert not is_multiplicative(Q)


def test_sub_object_must_be_closed():
    O = nerve(group_groupoid("C2"))
    members = [np.arange(O.size(n)) for n in range(O.N + 1)]
    members[1] = np.array([0])
    Q = SubObject(O, members)
    with pytest.raises(PreconditionError):
        Q.pull((0, 1), 2, np.arange(Q.size(2)))


@pytest.mark.parametrize("seed", range(5))
def test_random_groupoid_suite(seed):
    rng = random.Random(seed)
    G = random_groupoid(rng)
    assert G.n_objects <= 4 and G.n_morphisms <= 24
    O = nerve(G)
    assert groupoid_from(O).same_tables(G)
    assert nerve_functoriality(O, cap=16, seed=seed) > 0
    for _ in range(10):
        n = rng.randint(1, 4)
        chain = random_chain(G, n, rng)
        idx = O.index_of(n, np.array([chain]))
        X = O.segments(n, idx)
        verts = O.vertices(n, idx)[:, 0]
        for a in range(n + 1):
            for b in range(n + 1):
                assert X[a, b, 0] == telescoping_product(G, chain, a, b, verts)
