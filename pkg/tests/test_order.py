from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_isomorphic, random_poset
from semiplanar import catalog
from semiplanar.order import (NotAntisymmetric, NotASemilattice, NotReflexive, NotTransitive, Poset,
                              SizeLimitExceeded, add_bottom, bottom, canonical_form, certificate,
                              covers, dual, from_certificate, is_isomorphic, is_join_semilattice,
                              is_lattice, join_semilattice_table, mi_elements, remove_element, top,
                              validate)


def test_validate_reports_first_broken_axiom():
    with pytest.raises(NotReflexive) as exc:
        validate([[True, False], [False, False]])
    assert exc.value.x == 1
    with pytest.raises(NotAntisymmetric):
        validate([[True, True], [True, True]])
    with pytest.raises(NotTransitive) as exc:
        validate([[True, True, False], [False, True, True], [False, False, True]])
    assert (exc.value.x, exc.value.y, exc.value.z) == (0, 1, 2)


def test_from_covers_takes_transitive_closure():
    p = Poset.from_edge_string("abc", "ab bc")
    assert p.leq(0, 2) and not p.leq(2, 0)
    assert covers(p) == {(0, 1), (1, 2)}
    with pytest.raises(NotAntisymmetric):
        Poset.from_edge_string("ab", "ab ba")


def test_chain_and_antichain():
    c = Poset.chain(4)
    assert all(c.leq(i, j) == (i <= j) for i in range(4) for j in range(4))
    assert is_lattice(c) and bottom(c) == 0 and top(c) == 3
    a = Poset.antichain(3)
    assert not is_join_semilattice(a)


def test_join_table_of_square():
    p = Poset.from_edge_string("0abi", "0a 0b ai bi")
    t = join_semilattice_table(p)
    assert t.join[1][2] == 3 and t.join[0][1] == 1 and t.join[2][2] == 2


def test_crown_reports_first_pair_without_join():
    crown = catalog.build("Crown8").poset
    with pytest.raises(NotASemilattice) as exc:
        join_semilattice_table(crown)
    assert (crown.name(exc.value.x), crown.name(exc.value.y)) == ("a", "c")


def test_add_bottom_appends_least_element():
    p = catalog.build("F0").poset
    q = add_bottom(p)
    assert q.size == p.size + 1 and bottom(q) == p.size
    assert q.labels[-1] not in p.labels
    assert remove_element(q, p.size) == p


def test_dual_is_an_involution_and_swaps_extremes():
    p = catalog.build("E1").poset
    assert dual(dual(p)) == p
    assert bottom(dual(p)) == top(p)


def test_mi_elements_of_chain_and_square():
    assert mi_elements(Poset.chain(3)) == frozenset({0, 1})
    square = Poset.from_edge_string("0abi", "0a 0b ai bi")
    assert mi_elements(square) == frozenset({1, 2})


def test_size_limits():
    with pytest.raises(SizeLimitExceeded):
        Poset.chain(65)
    with pytest.raises(SizeLimitExceeded):
        canonical_form(Poset.chain(13))


def test_certificate_round_trip():
    p = catalog.build("G0").poset
    cert = certificate(p)
    assert certificate(from_certificate(cert)) == cert
    assert is_isomorphic(from_certificate(cert), p)


def test_canonical_form_agrees_with_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 6)
        p, q = random_poset(rng, n), random_poset(rng, n)
        assert (certificate(p) == certificate(q)) == brute_isomorphic(p, q)


def test_certificates_survive_random_relabelling():
    rng = random.Random(3)
    ids = [i for i in catalog.all_ids() if catalog.build(i).poset is not None]
    for k in range(1000):
        p = catalog.build(ids[k % len(ids)]).poset
        perm = list(range(p.size))
        rng.shuffle(perm)
        assert certificate(p.relabel(perm)) == certificate(p)


@pytest.mark.parametrize("key", ["A0", "F0", "F1", "G0", "H0"])
def test_self_dual_members(key):
    p = catalog.build(key).poset
    assert is_isomorphic(p, dual(p))


def test_b_is_not_self_dual():
    assert not is_isomorphic(catalog.build("B").poset, catalog.build("Bdual").poset)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10 ** 6))
def test_relabelling_preserves_order_properties(n, seed):
    rng = random.Random(seed)
    p = random_poset(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    q = p.relabel(perm)
    assert certificate(p) == certificate(q)
    assert is_join_semilattice(p) == is_join_semilattice(q)
    assert dual(dual(q)) == q
