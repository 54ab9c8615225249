# ./tests/test_pkfree.py

import sys

import pytest
from hypothesis import given, settings, strategies as st

from burnlab.core.BurnEngine import RandomChooser, burning_number_exact, validate
from burnlab.core.PkFree import (
    PkFree,
    classify_cds,
    lift_by_domination,
    minimum_connected_dominating_set,
    minimum_connected_dominating_sets,
    pkfree_sequence,
)
from burnlab.utils import generators as gen
from burnlab.utils.data_class import BurningSequence, CdsCertificate
from burnlab.utils.errors import PreconditionError, VerificationError
from burnlab.utils.graph_utils import is_dominating, is_pk_free, longest_induced_path


@pytest.mark.parametrize("G, expected", [
    (gen.star(5), (0,)),
    (gen.path(5), (1, 2, 3)),
])
def test_minimum_cds_examples(G, expected):
    assert minimum_connected_dominating_set(G).vertices == expected


def test_minimum_cds_of_c6_has_four_vertices():
    cert = minimum_connected_dominating_set(gen.cycle(6))
    assert len(cert) == 4
    assert is_dominating(gen.cycle(6), cert.vertices)


def test_cds_rejects_disconnected_and_large_graphs():
    with pytest.raises(PreconditionError):
        minimum_connected_dominating_set(gen.disjoint_union(gen.path(2), gen.path(2)))
    with pytest.raises(PreconditionError):
        minimum_connected_dominating_set(gen.path(30), max_vertices=24)


def test_classify_cds():
    G = gen.path(6)
    cert = classify_cds(G, [1, 2, 3, 4], 6)
    assert cert.kind == "iso_pk2" and cert.path_order == (1, 2, 3, 4)
    assert classify_cds(gen.gtilde(), range(8), 6).kind == "pk2_free"
    assert classify_cds(gen.path(8), range(1, 7), 6).kind == "violation"


def test_gtilde_with_k6():
    B = pkfree_sequence(gen.gtilde(), 6)
    assert B.horizon <= 4 and validate(gen.gtilde(), B)


def test_complete_graph_with_k3():
    B = pkfree_sequence(gen.complete(5), 3)
    assert B.horizon <= 2 and validate(gen.complete(5), B)


def test_spider_with_k6():
    spider = gen.spider(3)
    assert longest_induced_path(spider) == 5
    B = pkfree_sequence(spider, 6)
    assert B.horizon <= 4 and validate(spider, B)


def test_graph_with_long_induced_path_is_rejected():
    with pytest.raises(PreconditionError):
        pkfree_sequence(gen.path(10), 5)
    with pytest.raises(PreconditionError):
        pkfree_sequence(gen.path(3), 1)


def test_lift_star_by_its_center():
    lifted = lift_by_domination(gen.star(5), [0], BurningSequence(sources=(0,), horizon=1))
    assert lifted == BurningSequence(sources=(0, 1), horizon=2)
    assert validate(gen.star(5), lifted)


def test_lift_keeps_early_finish():
    lifted = lift_by_domination(gen.path(1), [0], BurningSequence(sources=(0,), horizon=1))
    assert lifted.sources == (0,) and lifted.horizon == 2


def test_lift_rejects_bad_inputs():
    G = gen.path(5)
    with pytest.raises(PreconditionError):
        lift_by_domination(G, [1, 2, 3], BurningSequence(sources=(0,), horizon=1))
    with pytest.raises(PreconditionError):
        lift_by_domination(G, [0, 1], BurningSequence(sources=(0,), horizon=2))


def test_lift_of_exact_inner_witness():
    G = gen.path(5)
    inner_graph, _ = G.induced_subgraph([1, 2, 3])
    inner = burning_number_exact(inner_graph, max_nodes=10_000, max_seconds=10, threads=1).witness
    assert validate(G, lift_by_domination(G, [1, 2, 3], inner))


@settings(max_examples=40, derandomize=True, deadline=None)
@given(n=st.integers(min_value=1, max_value=10), seed=st.integers(min_value=0, max_value=10_000),
       slack=st.integers(min_value=1, max_value=3))
def test_sequence_within_bound_on_random_graphs(n, seed, slack):
    G = gen.random_connected(n, seed=seed)
    k = max(2, longest_induced_path(G) + slack)
    lab = PkFree(chooser=RandomChooser(seed))
    B = lab.sequence(G, k)
    assert B.horizon <= (k + 2) // 2
    assert validate(G, B)


def test_all_minimum_cds_of_c4():
    assert list(minimum_connected_dominating_sets(gen.cycle(4))) == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_every_minimum_cds_meets_the_dichotomy():
    cases = 0
    for G in gen.connected_corpus(60, 10, seed=4, min_n=2):
        for k in range(4, 9):
            if not is_pk_free(G, k):
                continue
            for subset in minimum_connected_dominating_sets(G):
                cases += 1
                assert classify_cds(G, subset, k).kind != "violation", (G.edges, k, subset)
    assert cases > 0


def test_violating_cds_aborts(monkeypatch):
    G = gen.path(5)
    broken = CdsCertificate(vertices=(1, 2, 3), kind="violation", k=6)
    module = sys.modules[pkfree_sequence.__module__]
    monkeypatch.setattr(module, "minimum_connected_dominating_set", lambda *args, **kwargs: broken)
    with pytest.raises(VerificationError) as info:
        pkfree_sequence(G, 6)
    assert "(1, 2, 3)" in str(info.value)
