# -*- coding:utf-8 -*-
from fractions import Fraction
from math import factorial

import pytest

from brute_force import brute_force_aut, brute_force_naming_set
from config.config import check_config
from conftest import GOLDEN, case_ids
from core.assert_util import assert_util
from core.duality import (
    LabeledStableGraph,
    check_dotted_oracle,
    check_naming_lemma,
    dotted_expand_direct,
    duality_map,
    duality_matrix,
    labeled_aut_order,
    naming_set,
    verify_duality_sum,
    verify_involution,
)
from core.enumeration import FormalSum, catalog, stable_pairs
from core.exception_handler import CheckFailedError
from core.exceptions import DomainError, StructuralError
from core.graph import StableGraph, graph_from_dict, signature
from core.logger import log
from utils.common_util import parse_fraction

phi_cases = GOLDEN["duality"]["phi"]
IDENTITY_PAIRS = stable_pairs(check_config["max_chi_identity"])


def _expected_sum(case) -> FormalSum:
    graph_catalog = catalog(case["g"], case["n"])
    return FormalSum(graph_catalog, {
        graph_catalog.index_of(graph_from_dict(term["graph"])): parse_fraction(term["coeff"])
        for term in case["terms"]
    })


# ------------------------------ φ 的取值 ------------------------------
@pytest.mark.parametrize("case", phi_cases, ids=case_ids(phi_cases))
def test_duality_map_golden(case):
    graph_catalog = catalog(case["g"], case["n"])
    i = graph_catalog.index_of(graph_from_dict(case["source"]))
    assert duality_map(graph_catalog, i) == _expected_sum(case), case["case_desc"]


@pytest.mark.parametrize("case", phi_cases, ids=case_ids(phi_cases))
def test_dotted_expansion_golden(case):
    """带标号粘合的直接展开给出同一个形式和"""
    assert dotted_expand_direct(graph_from_dict(case["source"])) == _expected_sum(case)


def test_duality_map_index_out_of_range():
    with pytest.raises(DomainError):
        duality_map(catalog(0, 4), 5)


def test_dotted_expansion_requires_connected_graph():
    with pytest.raises(DomainError):
        dotted_expand_direct(StableGraph(((1, 1), (1, 1))))


# ------------------------------ 对合性与求和恒等式 ------------------------------
@pytest.mark.parametrize("g, n", IDENTITY_PAIRS)
def test_involution(g, n):
    assert verify_involution(catalog(g, n)).ok


def test_involution_matrix_genus_one():
    matrix = duality_matrix(catalog(1, 1))
    assert matrix.shape == (2, 2)
    assert_util.assert_matrix_identity(matrix.dot(matrix), "φ∘φ (1,1)")
    assert_util.assert_matrix_equal(matrix, duality_matrix(catalog(1, 1)), "φ 矩阵可复现")
    with pytest.raises(CheckFailedError):
        assert_util.assert_matrix_identity(matrix[:, :1], "非方阵")


@pytest.mark.parametrize("g, n", IDENTITY_PAIRS)
def test_duality_sum(g, n):
    assert verify_duality_sum(catalog(g, n)).ok


@pytest.mark.parametrize("g, n", stable_pairs(check_config["max_chi_oracle"]))
def test_dotted_oracle_agrees_with_poset_formula(g, n):
    report = check_dotted_oracle(catalog(g, n))
    assert report.ok, [r.detail for r in report.failures]


# ------------------------------ 带标号图与命名引理 ------------------------------
NAMING_PAIRS = [pair for pair in stable_pairs(4) if pair[1] <= 4]


@pytest.mark.parametrize("g, n", NAMING_PAIRS)
def test_naming_lemma(g, n):
    assert check_naming_lemma(catalog(g, n)).ok


@pytest.mark.parametrize("g, n", NAMING_PAIRS)
def test_naming_set_matches_brute_force(g, n, limits):
    """S_Γ 由 n! 种排列穷举独立构造，带标号 |Aut| 由固定外腿的半边穷举独立计数"""
    bound = limits["brute_force_half_edges"]
    graph_catalog = catalog(g, n)
    checked = 0
    for graph in graph_catalog.graphs:
        if graph.half_edges > bound:
            continue
        expected = brute_force_naming_set(graph)
        labeled = naming_set(graph)
        assert len(labeled) == len(expected), signature(graph)
        for lg in labeled:
            assert labeled_aut_order(lg) == brute_force_aut(lg.graph, fix_legs=True), signature(lg.graph)
        total = sum((Fraction(1, brute_force_aut(lg.graph, fix_legs=True)) for lg in expected), Fraction(0))
        assert total == Fraction(factorial(n), brute_force_aut(graph)), signature(graph)
        checked += 1
    log.info(f"✅ 命名集合穷举对照：G^c_{{{g},{n}}} 共{checked}个图")
    assert checked > 0


def test_labeled_aut_fixes_legs():
    tree = StableGraph(((0, 2), (0, 2)), ((0, 1),))
    labeled = naming_set(tree)
    # {0,1}|{2,3}、{0,2}|{1,3}、{0,3}|{1,2}
    assert len(labeled) == 3
    assert all(labeled_aut_order(lg) == 1 for lg in labeled)
    loop = LabeledStableGraph(StableGraph(((0, 1),), ((0, 0),)), ((0,),))
    assert labeled_aut_order(loop) == 2


def test_labeled_graph_validation():
    graph = StableGraph(((0, 2), (0, 2)), ((0, 1),))
    with pytest.raises(StructuralError):
        LabeledStableGraph(graph, ((0, 1),))
    with pytest.raises(StructuralError):
        LabeledStableGraph(graph, ((0, 1), (1, 2)))
    with pytest.raises(StructuralError):
        naming_set(graph, [0, 1, 2])
