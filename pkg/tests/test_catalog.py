from __future__ import annotations

import pytest

from semiplanar import catalog
from semiplanar.catalog import (AlreadySubsemilattice, NotASubposetSemilattice, UnknownId,
                                key_lemma_extension, key_lemma_postconditions, normalize_id,
                                sharpness_family, subposet_join)
from semiplanar.embed import find_embedding
from semiplanar.groupoid import from_join_semilattice, relabel_by_labels
from semiplanar.order import (Poset, bottom, dual, is_isomorphic, is_join_semilattice, is_lattice,
                              join_semilattice_table)
from semiplanar.subcount import count_subuniverses

SIZES = {"A0": 8, "B": 9, "C": 9, "D": 9, "E0": 9, "E1": 11, "F0": 9, "F1": 11, "G0": 11,
         "H0": 10, "Snake10": 10, "EnrichedFence8": 10, "Crown8": 8, "DownFence9": 9, "UpFence9": 9}


@pytest.mark.parametrize("key,size", sorted(SIZES.items()))
def test_sizes(key, size):
    assert catalog.build(key).size == size


@pytest.mark.parametrize("alias,key", [
    ("a0", "A0"), ("A_0", "A0"), ("dual-B", "Bdual"), ("dual-E_1", "E1dual"), ("f0", "F0"),
    ("chain4", "Chain(4)"), ("Chain(7)", "Chain(7)"), ("snake", "Snake10"),
    ("Eight-crown", "Crown8_i"), ("9-element up-fence & i; Case 1", "UpFence9_case1"),
])
def test_normalize_id(alias, key):
    assert normalize_id(alias) == key


def test_unknown_id():
    with pytest.raises(UnknownId):
        catalog.build("Z9")
    with pytest.raises(UnknownId):
        catalog.build("chain0")


def test_chain_entries():
    entry = catalog.build("chain4")
    assert entry.expected_sub == 16 and entry.expected_sigma == 256


@pytest.mark.parametrize("key", list(catalog.SIGMA_TABLE) + ["EnrichedFence8", "Snake10"])
def test_edge_lists_reproduce_constraint_blocks(key):
    entry = catalog.build(key)
    p = entry.poset
    assert is_join_semilattice(p)
    full = from_join_semilattice(join_semilattice_table(p), p.labels)
    nontrivial = {k: r for k, r in full.ops.items() if r not in k}
    block = relabel_by_labels(entry.groupoid, p.labels)
    assert block.ops == nontrivial


def test_kr_members_are_lattices():
    members = catalog.kr_members_up_to_nine()
    assert [m.id for m in members] == list(catalog.KR_UP_TO_NINE)
    assert all(is_lattice(m.poset) and m.size <= 9 for m in members)


def test_snake_sits_inside_g0_but_not_h0():
    snake = catalog.build("Snake10").poset
    assert find_embedding(snake, catalog.build("G0").poset) is not None
    # same size and not isomorphic; only the larger H_n contain the snake
    assert find_embedding(snake, catalog.build("H0").poset) is None


def test_down_fence_is_dual_up_fence():
    assert is_isomorphic(catalog.build("DownFence9").poset, dual(catalog.build("UpFence9").poset))


@pytest.mark.parametrize("key,builder", [
    ("DownFence9_i", catalog.enrich_down_fence),
    ("Crown8_i", catalog.enrich_crown),
    ("UpFence9_fail", lambda: catalog.enrich_up_fence("fail")),
    ("UpFence9_case1", lambda: catalog.enrich_up_fence("case1")),
    ("UpFence9_case2", lambda: catalog.enrich_up_fence("case2")),
])
def test_enrichment_equations_match_appendix(key, builder):
    built = builder()
    block = catalog.build(key).groupoid
    assert relabel_by_labels(block, built.labels) == built


def test_unknown_up_fence_case():
    with pytest.raises(ValueError):
        catalog.enrich_up_fence("case3")


def test_sharpness_family_shape():
    for n in range(9, 15):
        p = sharpness_family(n)
        assert p.size == n and is_lattice(p)
    assert sharpness_family(9) == catalog.build("F0").poset
    with pytest.raises(ValueError):
        sharpness_family(8)


def test_alternate_catalog_text_is_used():
    text = catalog.appendix_text().replace("e+g=c  f+g=c", "e+g=c")
    tampered = catalog.Catalog(text)
    assert count_subuniverses(tampered.build("F0").groupoid) != 254
    assert count_subuniverses(catalog.build("F0").groupoid) == 254


# the Key Lemma construction
def _pentagon_host() -> Poset:
    # 0 < a < c < i, 0 < b < i, with a v b = i and c v b = i
    return Poset.from_edge_string("0abci", "0a 0b ac ci bi")


def test_key_lemma_step_adds_the_missing_join():
    host = Poset.from_edge_string("0abdj", "0a 0b ad bd dj")
    # S = {a, b, j}: in S the join of a and b is j, in the host it is d
    s = (1, 2, 4)
    assert subposet_join(host, s)[(1, 2)] == 4
    step = key_lemma_extension(host, s)
    assert (step.d, step.j) == (3, 4)
    assert step.elements == (1, 2, 3, 4)
    assert key_lemma_postconditions(host, s, step) == {
        "semilattice": True, "unique_upper_cover": True, "phi_bound": True}


def test_key_lemma_rejects_closed_and_non_semilattice_subsets():
    host = _pentagon_host()
    with pytest.raises(AlreadySubsemilattice):
        key_lemma_extension(host, (0, 1, 4))
    with pytest.raises(NotASubposetSemilattice):
        key_lemma_extension(host, (1, 2))


def test_key_lemma_iteration_reaches_a_subsemilattice():
    host = catalog.build("F0").poset
    s = tuple(i for i in range(host.size) if i != bottom(host) and host.name(i) not in "ce")
    assert is_join_semilattice(host.induced(s))
    steps = 0
    while True:
        try:
            s = key_lemma_extension(host, s).elements
        except AlreadySubsemilattice:
            break
        steps += 1
    assert 1 <= steps <= 2 and catalog.is_subsemilattice(host, s)
