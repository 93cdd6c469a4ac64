# -*- coding:utf-8 -*-
from fractions import Fraction
from math import factorial

import pytest

from conftest import GOLDEN, case_ids
from core.enumeration import stable_pairs
from core.euler import (
    EulerTable,
    bernoulli,
    check_triangularity,
    chi_closed,
    chi_closed_assignment,
    chi_open_inverted,
    euler_table,
    harer_zagier,
    harer_zagier_assignment,
    verify_open_closed,
)
from core.exception_handler import DualityViolationError
from core.exceptions import DomainError
from core.feynman import inverse_values
from core.logger import log
from utils.common_util import parse_fraction

bernoulli_cases = GOLDEN["euler"]["bernoulli"]
hz_cases = GOLDEN["euler"]["harer_zagier"]
closed_cases = GOLDEN["euler"]["chi_closed"]


# ------------------------------ Bernoulli 数与 Harer-Zagier ------------------------------
@pytest.mark.parametrize("case", bernoulli_cases, ids=case_ids(bernoulli_cases))
def test_bernoulli_golden(case):
    assert bernoulli(case["k"]) == parse_fraction(case["value"]), case["case_desc"]


@pytest.mark.parametrize("k", [1, 3, -2, 2.0])
def test_bernoulli_rejects_bad_index(k):
    with pytest.raises(DomainError):
        bernoulli(k)


@pytest.mark.parametrize("case", hz_cases, ids=case_ids(hz_cases))
def test_harer_zagier_golden(case):
    assert harer_zagier(case["g"], case["n"]) == parse_fraction(case["value"]), case["case_desc"]


def test_harer_zagier_genus_zero_closed_form():
    """χ(M_{0,n}) = (-1)^{n+1}(n-3)!"""
    for n in range(3, 10):
        assert harer_zagier(0, n) == (-1) ** (n + 1) * factorial(n - 3)


@pytest.mark.parametrize("g, n", [(0, 2), (1, 0), (-1, 4)])
def test_unstable_pairs_rejected(g, n):
    with pytest.raises(DomainError):
        harer_zagier(g, n)
    with pytest.raises(DomainError):
        chi_closed(g, n)


# ------------------------------ 闭模空间与开闭往返 ------------------------------
@pytest.mark.parametrize("case", closed_cases, ids=case_ids(closed_cases))
def test_chi_closed_golden(case):
    assert chi_closed(case["g"], case["n"]) == parse_fraction(case["value"]), case["case_desc"]


def test_open_closed_roundtrip(limits):
    max_chi = limits["max_chi_euler"]
    for g, n in stable_pairs(max_chi):
        assert chi_open_inverted(g, n) == harer_zagier(g, n)
    log.info(f"✅ 开闭往返：2g-2+n<={max_chi} 全部还原Harer-Zagier值")


def test_inverse_values_of_closed_assignment():
    """同一件事走 invert 的数值路径：κ=1 时对 χ(M̄) 做反演"""
    recovered = inverse_values(chi_closed_assignment(4), 4)
    assert recovered == harer_zagier_assignment(4).values


@pytest.mark.parametrize("g, n", stable_pairs(4))
def test_triangularity(g, n):
    assert check_triangularity(g, n)


def test_verify_open_closed_report():
    report = verify_open_closed(3)
    assert report.ok
    assert len(report.results) == 2 * len(stable_pairs(3))


# ------------------------------ Euler 表 ------------------------------
def test_euler_table_csv():
    table = euler_table(2)
    lines = table.to_csv().splitlines()
    assert lines[0] == ",".join(EulerTable.COLUMNS)
    assert lines[1:] == [
        "0,3,1,1",
        "0,4,-1,2",
        "1,1,-1/12,5/12",
        "1,2,1/12,1/2",
        "2,0,-1/240,119/1440",
    ]


def test_euler_table_dict_and_frame():
    table = euler_table(1)
    assert table.to_dict() == {
        "max_chi": 1,
        "entries": [
            {"g": 0, "n": 3, "chi_open": "1", "chi_closed": "1"},
            {"g": 1, "n": 1, "chi_open": "-1/12", "chi_closed": "5/12"},
        ],
    }
    assert list(table.to_frame()["chi_closed"]) == ["1", "5/12"]
    assert table.entries[(1, 1)] == (Fraction(-1, 12), Fraction(5, 12))


def test_euler_table_requires_positive_max_chi():
    with pytest.raises(DomainError):
        euler_table(0)


def test_euler_table_always_checks_roundtrip(monkeypatch):
    """χ(M̄) 被改坏时，反演值与Harer-Zagier不一致，建表直接失败"""
    chi_open_inverted.cache_clear()
    monkeypatch.setattr("core.euler.chi_closed", lambda g, n: Fraction(7))
    try:
        with pytest.raises(DualityViolationError):
            euler_table(1)
    finally:
        chi_open_inverted.cache_clear()
