# -*- coding:utf-8 -*-
from fractions import Fraction

import pytest

from core.enumeration import catalog, stable_pairs
from core.exception_handler import DataNotFoundError
from core.exceptions import DomainError, StructuralError
from core.feynman import (
    FeynmanAssignment,
    SymbolicWeight,
    forward_values,
    graph_sum_forward,
    graph_sum_inverse,
    graph_weight,
    gtilde_of_graph,
    inverse_values,
    numeric_graph_sum,
    symbolic_inversion,
    verify_realized_inversion,
    verify_symbolic_roundtrip,
)
from core.graph import StableGraph
from core.poset import build_poset

K = SymbolicWeight.kappa()
F03, F04, F11 = SymbolicWeight.symbol(0, 3), SymbolicWeight.symbol(0, 4), SymbolicWeight.symbol(1, 1)


# ------------------------------ 符号多项式 ------------------------------
def test_symbolic_weight_arithmetic():
    p = F03 * K + 2
    assert p - p == SymbolicWeight.zero()
    assert (p ** 2).coefficient(2, [(0, 3), (0, 3)]) == 1
    assert (p ** 2).coefficient(1, [(0, 3)]) == 4
    assert 3 * F03 == F03 + F03 + F03
    assert str(F04 + 3 * K * F03 ** 2) == "F_{0,4} + 3·κ·F_{0,3}·F_{0,3}"
    assert SymbolicWeight.from_dict(p.to_dict()) == p
    with pytest.raises(DomainError):
        F03 ** -1
    with pytest.raises(StructuralError):
        SymbolicWeight.from_dict({"terms": [{"kappa": 0}]})


def test_substitute_and_evaluate():
    p = F04 + 3 * K * F03 ** 2
    assert p.substitute({(0, 3): SymbolicWeight.constant(2)}, kappa=Fraction(1, 3)) == F04 + 4
    assignment = FeynmanAssignment({(0, 3): 2, (0, 4): 5}, Fraction(1, 3))
    assert p.evaluate(assignment) == 9


# ------------------------------ 图和 ------------------------------
def test_graph_weight():
    theta = StableGraph(((0, 0), (0, 0)), ((0, 1), (0, 1), (0, 1)))
    assert graph_weight(theta) == K ** 3 * F03 ** 2


def test_forward_graph_sum_goldens():
    assert graph_sum_forward(1, 1) == F11 + Fraction(1, 2) * K * F03
    assert graph_sum_forward(0, 4) == F04 + 3 * K * F03 ** 2
    assert graph_sum_forward(0, 3) == F03


def test_inverse_graph_sum_flips_sign():
    assert graph_sum_inverse(1, 1) == F11 - Fraction(1, 2) * K * F03


@pytest.mark.parametrize("g, n", stable_pairs(4))
def test_symbolic_inversion(g, n):
    assert symbolic_inversion(g, n) == SymbolicWeight.symbol(g, n)


def test_symbolic_roundtrip_report():
    report = verify_symbolic_roundtrip(4)
    assert report.ok, [r.detail for r in report.failures]


# ------------------------------ 数值特化 ------------------------------
def test_numeric_matches_symbolic(rng, limits):
    for _ in range(limits["random_trials"]):
        assignment = rng.random_assignment(3)
        for (g, n), value in forward_values(assignment, 3).items():
            assert value == graph_sum_forward(g, n).evaluate(assignment)


@pytest.mark.parametrize("kappa", [Fraction(1), Fraction(7, 3), Fraction(-2, 5)])
def test_numeric_roundtrip(rng, kappa):
    assignment = rng.random_assignment(4, kappa)
    tilde = FeynmanAssignment(forward_values(assignment, 4), kappa)
    assert inverse_values(tilde, 4) == assignment.values


def test_zero_assignment_stays_zero():
    zero = FeynmanAssignment.zero(4, Fraction(5, 2))
    assert all(value == 0 for value in forward_values(zero, 4).values())


def test_missing_value_raises():
    assignment = FeynmanAssignment({(0, 3): 1})
    with pytest.raises(DataNotFoundError):
        forward_values(assignment, 2)
    with pytest.raises(DataNotFoundError):
        numeric_graph_sum(1, 1, assignment.value, 1)


def test_assignment_json_and_validation():
    assignment = FeynmanAssignment.from_json({"(0,3)": "1/2", "(1,1)": "-3"}, kappa="2")
    assert assignment.kappa == 2
    assert assignment.max_chi == 1
    assert assignment.to_json() == {"(0,3)": "1/2", "(1,1)": "-3"}
    assert assignment.covers(1) and not assignment.covers(2)
    with pytest.raises(DomainError):
        FeynmanAssignment({(0, 2): 1})
    with pytest.raises(DomainError):
        FeynmanAssignment.from_json({"(0,3)": "abc"})


# ------------------------------ g̃ 与实现的反演 ------------------------------
def test_gtilde_of_vertex_and_dumbbell():
    graph_catalog = catalog(2, 0)
    poset = build_poset(graph_catalog)
    assert gtilde_of_graph(poset, graph_catalog.vertex_index) == graph_sum_forward(2, 0)
    dumbbell = graph_catalog.index_of(StableGraph(((0, 0), (0, 0)), ((0, 0), (0, 1), (1, 1))))
    assert gtilde_of_graph(poset, dumbbell) == K ** 3 * graph_sum_forward(0, 3) ** 2


@pytest.mark.parametrize("g, n", stable_pairs(3))
def test_realized_inversion(g, n):
    report = verify_realized_inversion(build_poset(catalog(g, n)))
    assert report.ok, [r.name for r in report.failures]
