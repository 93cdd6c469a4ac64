# -*- coding:utf-8 -*-
import itertools
from fractions import Fraction

import pytest

from config.config import check_config
from conftest import GOLDEN, case_ids
from core.assert_util import CheckReport
from core.enumeration import catalog, clear_catalogs, stable_pairs
from core.exception_handler import CheckFailedError, ConsistencyError
from core.exceptions import DomainError
from core.graph import StableGraph, canonical_key, genus, graph_from_dict
from core.poset import (
    build_poset,
    check_mobius_identities,
    classical_mobius,
    contract,
    contract_edges,
    convolve,
    delta,
    generalized_inversion,
    generalized_inversion_inverse,
    generalized_mobius,
    generalized_zeta,
)
from utils.common_util import matrices_equal, parse_fraction

hasse_cases = GOLDEN["poset"]["hasse"]
zeta_cases = GOLDEN["poset"]["generalized_zeta"]
mobius_cases = GOLDEN["poset"]["generalized_mobius"]
IDENTITY_PAIRS = stable_pairs(check_config["max_chi_identity"])


# ------------------------------ 边收缩 ------------------------------
def test_contract_loop_raises_genus():
    graph = StableGraph(((0, 1),), ((0, 0),))
    assert contract(graph, 0) == StableGraph(((1, 1),))


def test_contract_parallel_edge_becomes_loop():
    banana = StableGraph(((0, 1), (0, 1)), ((0, 1), (0, 1)))
    assert contract(banana, 0) == StableGraph(((0, 2),), ((0, 0),))


def test_contract_rejects_bad_edge_id():
    graph = StableGraph(((0, 1),), ((0, 0),))
    with pytest.raises(DomainError):
        contract(graph, 1)
    with pytest.raises(DomainError):
        contract_edges(graph, [-1])


def _merge_map(num_vertices: int, u: int, v: int) -> dict:
    """收缩边 {u,v}（u<=v）后旧顶点到新顶点下标的映射，与 contract_edges 的编号规则一致"""
    if u == v:
        return {x: x for x in range(num_vertices)}
    reps = sorted(set(range(num_vertices)) - {v})
    return {x: reps.index(u if x == v else x) for x in range(num_vertices)}


@pytest.mark.parametrize("g, n", stable_pairs(4))
def test_contraction_order_independent(g, n):
    """逐条收缩（任意顺序）与一次性收缩同构，且亏格、外腿数不变"""
    for graph in catalog(g, n).graphs:
        for size in range(1, min(graph.num_edges, 3) + 1):
            for subset in itertools.combinations(range(graph.num_edges), size):
                at_once = contract_edges(graph, subset)
                assert genus(at_once) == g and at_once.n == n
                for order in itertools.permutations(subset):
                    current = graph
                    pending = [graph.edges[e] for e in order]
                    while pending:
                        u, v = pending.pop(0)
                        vertex_map = _merge_map(current.num_vertices, u, v)
                        # 端点相同的平行边互相等价，取任意一条即可
                        current = contract(current, current.edges.index((u, v)))
                        pending = [tuple(sorted((vertex_map[x], vertex_map[y]))) for x, y in pending]
                    assert canonical_key(current) == canonical_key(at_once)


# ------------------------------ 偏序结构 ------------------------------
@pytest.mark.parametrize("case", hasse_cases, ids=case_ids(hasse_cases))
def test_hasse_diagram(case):
    """覆盖关系逐条对照，而不只是条数"""
    graph_catalog = catalog(case["g"], case["n"])
    poset = build_poset(graph_catalog)
    assert poset.size == case["size"], case["case_desc"]
    expected = {
        (graph_catalog.index_of(graph_from_dict(cover["lower"])), graph_catalog.index_of(graph_from_dict(cover["upper"])))
        for cover in case["covers"]
    }
    assert len(expected) == len(case["covers"])
    assert set(poset.covers) == expected, case["case_desc"]
    for lower, upper in expected:
        assert genus(graph_catalog.graphs[lower]) == case["g"]
        assert graph_catalog.graphs[lower].num_edges == graph_catalog.graphs[upper].num_edges + 1


def test_genus_zero_five_is_a_chain():
    poset = build_poset(catalog(0, 5))
    assert poset.size == 3
    assert all(poset.le(i, j) or poset.le(j, i) for i in range(3) for j in range(3))
    assert poset.interval(2, 0) == [0, 1, 2]


@pytest.mark.parametrize("g, n", stable_pairs(4))
def test_structure_of_poset(g, n):
    poset = build_poset(catalog(g, n))
    assert poset.maximum() == 0
    for lower, upper in poset.covers:
        assert poset.lt(lower, upper)
        assert not any(poset.lt(lower, k) and poset.lt(k, upper) for k in range(poset.size))
    for i in range(poset.size):
        # C(Γ, Γ) = {∅}
        assert poset.counts[i][i] == 1
        assert sum(poset.counts[i]) == 2 ** poset.rank(i)


def test_foreign_incidence_functions_do_not_convolve():
    with pytest.raises(DomainError):
        convolve(delta(build_poset(catalog(0, 4))), delta(build_poset(catalog(1, 1))))


# ------------------------------ ζ̃ 与 μ̃ ------------------------------
@pytest.mark.parametrize("case", zeta_cases, ids=case_ids(zeta_cases))
def test_generalized_zeta_golden(case):
    graph_catalog = catalog(case["g"], case["n"])
    i = graph_catalog.index_of(graph_from_dict(case["lower"]))
    j = graph_catalog.index_of(graph_from_dict(case["upper"]))
    assert generalized_zeta(build_poset(graph_catalog))[i, j] == parse_fraction(case["value"])


@pytest.mark.parametrize("case", mobius_cases, ids=case_ids(mobius_cases))
def test_generalized_mobius_golden(case):
    graph_catalog = catalog(case["g"], case["n"])
    i = graph_catalog.index_of(graph_from_dict(case["lower"]))
    mu = generalized_mobius(build_poset(graph_catalog))
    assert mu[i, graph_catalog.vertex_index] == parse_fraction(case["value"])


@pytest.mark.parametrize("g, n", IDENTITY_PAIRS)
def test_mobius_identity_suite(g, n):
    check_mobius_identities(build_poset(catalog(g, n))).raise_for_failures()


def test_classical_mobius_on_chain():
    mu = classical_mobius(build_poset(catalog(0, 5)))
    assert (mu[2, 1], mu[2, 0], mu[1, 0]) == (-1, 0, -1)


def test_convolution_with_delta(rng):
    poset = build_poset(catalog(1, 2))
    f = rng.random_incidence(poset)
    assert convolve(delta(poset), f) == f
    assert convolve(f, delta(poset)) == f


def test_generalized_inversion_roundtrip(rng):
    poset = build_poset(catalog(1, 2))
    for _ in range(100):
        values = rng.random_vector(poset.size)
        assert generalized_inversion_inverse(poset, generalized_inversion(poset, values)) == values
        assert generalized_inversion(poset, generalized_inversion_inverse(poset, values)) == values


def test_maximum_requires_unique_top():
    poset = build_poset(catalog(0, 4))
    assert poset.minimal_elements() == [1]
    assert poset.rank(1) == 1
    with pytest.raises(ConsistencyError):
        type(poset)(poset.catalog, poset.counts, ((True, False), (False, True)), ()).maximum()


def test_identity_values_are_fractions():
    mu = generalized_mobius(build_poset(catalog(0, 4)))
    assert mu[1, 0] == Fraction(-3)


def test_failed_report_raises():
    report = CheckReport("演示")
    report.record("通过项", True)
    report.record("失败项", False, "1≠2")
    assert not report and report.failures[0].name == "失败项"
    with pytest.raises(CheckFailedError):
        report.raise_for_failures()


def test_clear_catalogs_drops_poset_caches():
    old_catalog = catalog(1, 2)
    old_poset = build_poset(old_catalog)
    generalized_mobius(old_poset)
    assert build_poset.cache_info().currsize > 0
    clear_catalogs()
    assert build_poset.cache_info().currsize == 0
    assert generalized_zeta.cache_info().currsize == 0
    assert generalized_mobius.cache_info().currsize == 0
    new_poset = build_poset(catalog(1, 2))
    assert new_poset.catalog is not old_catalog
    assert new_poset.covers == old_poset.covers
    assert matrices_equal(generalized_mobius(new_poset).values, generalized_mobius(old_poset).values)
