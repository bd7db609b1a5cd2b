from __future__ import annotations

import random
from itertools import permutations

from conftest import random_poset
from semiplanar import catalog
from semiplanar.embed import (Embedding, contains_any, find_embedding, find_isomorphism,
                              is_embedding, iter_embeddings)
from semiplanar.order import Poset, dual


def _brute_embeddings(x: Poset, host: Poset) -> set[tuple[int, ...]]:
    return {m for m in permutations(range(host.size), x.size) if is_embedding(x, host, m)}


def test_iter_embeddings_is_complete_against_brute_force():
    rng = random.Random(17)
    for _ in range(120):
        x = random_poset(rng, rng.randint(1, 5))
        host = random_poset(rng, rng.randint(x.size, 7))
        found = [e.map for e in iter_embeddings(x, host)]
        assert len(found) == len(set(found))
        assert set(found) == _brute_embeddings(x, host)


def test_six_into_eight_spot_checks():
    rng = random.Random(23)
    for _ in range(8):
        x = random_poset(rng, 6, 0.5)
        host = random_poset(rng, 8, 0.5)
        assert {e.map for e in iter_embeddings(x, host)} == _brute_embeddings(x, host)


def test_embeddings_transport_to_duals():
    rng = random.Random(29)
    for _ in range(60):
        x = random_poset(rng, rng.randint(1, 5))
        host = random_poset(rng, rng.randint(x.size, 8))
        for e in iter_embeddings(x, host):
            assert is_embedding(dual(x), dual(host), e.map)
        assert (find_embedding(x, host) is None) == (find_embedding(dual(x), dual(host)) is None)


def test_order_must_be_reflected():
    two = Poset.antichain(2)
    chain = Poset.chain(3)
    assert find_embedding(two, chain) is None
    assert not is_embedding(two, chain, [0, 1])
    assert find_embedding(Poset.chain(2), chain).map == (0, 1)


def test_identity_is_described_as_identity():
    f0 = catalog.build("F0").poset
    emb = find_isomorphism(f0, f0)
    assert emb is not None and emb.describe(f0, f0) == "identity"
    assert Embedding((1, 0)).compose(Embedding((5, 6))).map == (6, 5)


def test_kr_member_found_in_sharpness_family():
    host = catalog.sharpness_family(12)
    hit = contains_any([(m.id, m.poset) for m in catalog.kr_members_up_to_nine()], host)
    assert hit is not None and hit[0] == "F0"
    assert is_embedding(catalog.build("F0").poset, host, hit[1].map)


def test_contains_any_accepts_bare_posets():
    assert contains_any([Poset.antichain(3), Poset.chain(2)], Poset.chain(4))[0] == "1"
    assert contains_any([], Poset.chain(2)) is None
