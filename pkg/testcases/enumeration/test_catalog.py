# -*- coding:utf-8 -*-
from collections import Counter
from fractions import Fraction

import pytest

from brute_force import brute_force_catalog
from conftest import GOLDEN, case_ids
from core.enumeration import (
    FormalSum,
    GraphCatalog,
    abstract_npoint,
    catalog,
    check_member,
    degenerations,
    enumerate_catalog,
    stable_pairs,
)
from core.exceptions import DomainError, StructuralError
from core.graph import StableGraph, canonical_key, stable_vertex
from core.logger import log
from core.poset import contract
from utils.common_util import parse_fraction

size_cases = GOLDEN["enumeration"]["catalog_size"]
fhat_cases = GOLDEN["enumeration"]["abstract_npoint"]


# ------------------------------ 目录大小与 F̂ ------------------------------
@pytest.mark.parametrize("case", size_cases, ids=case_ids(size_cases))
def test_catalog_size(case):
    assert len(catalog(case["g"], case["n"])) == case["size"], case["case_desc"]


@pytest.mark.parametrize("case", fhat_cases, ids=case_ids(fhat_cases))
def test_abstract_npoint_coefficients(case):
    """系数多重集 {1/|Aut(Γ)|} 与黄金数据一致"""
    fhat = abstract_npoint(catalog(case["g"], case["n"]))
    expected = Counter(parse_fraction(c) for c in case["coeffs"])
    assert Counter(fhat.coeffs.values()) == expected, case["case_desc"]


def test_genus_two_aut_column():
    assert sorted(catalog(2, 0).aut_orders) == sorted([1, 2, 2, 8, 2, 8, 12])


@pytest.mark.parametrize("g, n", [(0, 2), (1, 0), (0, 0), (-1, 5)])
def test_unstable_pair_rejected(g, n):
    with pytest.raises(DomainError):
        enumerate_catalog(g, n)


# ------------------------------ 目录结构 ------------------------------
@pytest.mark.parametrize("g, n", stable_pairs(4))
def test_catalog_order_and_membership(g, n):
    graph_catalog = catalog(g, n)
    assert graph_catalog.graphs[graph_catalog.vertex_index] == stable_vertex(g, n)
    edges = [graph.num_edges for graph in graph_catalog.graphs]
    assert edges == sorted(edges)
    # 同一 |E| 内按规范键排序
    for a, b in zip(range(len(graph_catalog)), range(1, len(graph_catalog))):
        if edges[a] == edges[b]:
            assert graph_catalog.keys[a] < graph_catalog.keys[b]
    for graph, key in zip(graph_catalog.graphs, graph_catalog.keys):
        assert check_member(graph_catalog, graph)
        assert canonical_key(graph) == key


@pytest.mark.parametrize("g, n", stable_pairs(4))
def test_every_graph_reachable_by_degeneration(g, n):
    """每个非 Ver 的成员都是某个边数少1的成员的一步退化，且收缩任一边回到目录内"""
    graph_catalog = catalog(g, n)
    children = {
        canonical_key(child)
        for graph in graph_catalog.graphs
        for child in degenerations(graph)
    }
    for i, graph in enumerate(graph_catalog.graphs):
        if i == graph_catalog.vertex_index:
            continue
        assert graph_catalog.keys[i] in children
        for e in range(graph.num_edges):
            assert graph_catalog.num_edges(graph_catalog.index_of(contract(graph, e))) == graph.num_edges - 1


@pytest.mark.parametrize("g, n", stable_pairs(3))
def test_enumeration_matches_brute_force(g, n):
    brute = brute_force_catalog(g, n)
    graph_catalog = catalog(g, n)
    assert len(brute) == len(graph_catalog)
    assert {canonical_key(graph) for graph in brute} == set(graph_catalog.keys)


@pytest.mark.slow
@pytest.mark.parametrize("g, n", stable_pairs(4, min_chi=4))
def test_enumeration_matches_brute_force_chi_four(g, n):
    brute = brute_force_catalog(g, n)
    assert {canonical_key(graph) for graph in brute} == set(catalog(g, n).keys)
    log.info(f"✅ 穷举对照 ({g},{n})：{len(brute)}个图")


def test_stable_pairs_order():
    assert stable_pairs(2) == [(0, 3), (0, 4), (1, 1), (1, 2), (2, 0)]
    assert stable_pairs(3, min_chi=3) == [(0, 5), (1, 3), (2, 1)]
    assert stable_pairs(0) == []


def test_catalog_memo_returns_same_object():
    assert catalog(1, 2) is catalog(1, 2)


# ------------------------------ 序列化 ------------------------------
def test_catalog_dict_keeps_order_and_aut():
    graph_catalog = catalog(1, 2)
    restored = GraphCatalog.from_dict(graph_catalog.to_dict())
    assert restored.keys == graph_catalog.keys
    assert restored.aut_orders == graph_catalog.aut_orders
    with pytest.raises(StructuralError):
        GraphCatalog.from_dict({"g": 1, "n": 2, "graphs": []})
    with pytest.raises(StructuralError):
        GraphCatalog.from_records(0, 4, [stable_vertex(0, 4), stable_vertex(0, 4)])


# ------------------------------ 形式和 ------------------------------
def test_formal_sum_arithmetic():
    graph_catalog = catalog(0, 4)
    ver = FormalSum.basis(graph_catalog, 0)
    tree = FormalSum.basis(graph_catalog, 1, Fraction(1, 2))
    total = ver + tree * 2 - ver
    assert total == FormalSum.basis(graph_catalog, 1)
    assert (ver - ver).is_zero()
    assert (-tree).coefficient(1) == Fraction(-1, 2)
    assert FormalSum.from_dict(graph_catalog, (ver + tree).to_dict()) == ver + tree


def test_formal_sum_rejects_foreign_catalog():
    with pytest.raises(DomainError):
        FormalSum.basis(catalog(0, 4), 0) + FormalSum.basis(catalog(1, 1), 0)
    with pytest.raises(DomainError):
        FormalSum(catalog(0, 3), {1: 1})


def test_check_member_rejects_wrong_genus():
    graph_catalog = catalog(1, 1)
    assert not check_member(graph_catalog, StableGraph(((0, 3),)))
    assert not check_member(graph_catalog, StableGraph(((0, 1),), ((0, 0), (0, 0))))
