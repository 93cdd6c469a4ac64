# -*- coding:utf-8 -*-
"""
模空间的轨形 Euler 示性数：Harer-Zagier 公式、χ(M̄_{g,n}) 的图和、
以及由 χ(M̄) 反演回 χ(M_{g,n}) 的开闭对偶
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Tuple

import pandas as pd

from core.assert_util import CheckReport
from core.enumeration import stable_pairs
from core.exception_handler import DualityViolationError
from core.exceptions import DomainError
from core.feynman import FeynmanAssignment, graph_sum_forward, numeric_graph_sum
from core.logger import log
from utils.common_util import chi_grade, format_fraction

Pair = Tuple[int, int]


# ------------------------------ Bernoulli 数与 Harer-Zagier 公式 ------------------------------
@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> Tuple[Fraction, ...]:
    """B_0..B_k，递推 Σ_{j=0}^{m} C(m+1, j) B_j = 0（B_1 = -1/2）"""
    table = [Fraction(1)]
    for m in range(1, k + 1):
        table.append(-sum((comb(m + 1, j) * table[j] for j in range(m)), Fraction(0)) / (m + 1))
    return tuple(table)


def bernoulli(k: int) -> Fraction:
    if not isinstance(k, int) or k < 0 or k % 2:
        raise DomainError(f"Bernoulli数下标必须是非负偶数：{k!r}")
    return _bernoulli_table(k)[k]


def harer_zagier(g: int, n: int) -> Fraction:
    """χ(M_{g,n}) = (-1)^n (2g-1) B_{2g} / (2g)! · (2g+n-3)!"""
    if g < 0 or n < 0 or chi_grade(g, n) <= 0:
        raise DomainError(f"(g,n)=({g},{n}) 不满足 2g-2+n>0")
    return (-1) ** n * (2 * g - 1) * bernoulli(2 * g) / factorial(2 * g) * factorial(2 * g + n - 3)


def harer_zagier_assignment(max_chi: int) -> FeynmanAssignment:
    """F_{g,n} = χ(M_{g,n})，κ = 1"""
    return FeynmanAssignment.from_function(harer_zagier, max_chi, 1)


# ------------------------------ 闭模空间与反演 ------------------------------
@lru_cache(maxsize=None)
def chi_closed(g: int, n: int) -> Fraction:
    """χ(M̄_{g,n}) = n! · Σ_Γ 1/|Aut(Γ)| Π χ(M_{g_v,val_v})"""
    if g < 0 or n < 0 or chi_grade(g, n) <= 0:
        raise DomainError(f"(g,n)=({g},{n}) 不满足 2g-2+n>0")
    return numeric_graph_sum(g, n, harer_zagier, 1)


def chi_closed_assignment(max_chi: int) -> FeynmanAssignment:
    return FeynmanAssignment.from_function(chi_closed, max_chi, 1)


@lru_cache(maxsize=None)
def chi_open_inverted(g: int, n: int) -> Fraction:
    """
    χ(M_{g,n}) = n! · Σ_Γ (-1)^{|E|}/|Aut(Γ)| Π χ(M̄_{g_v,val_v})
    顶点上的 (g_v,val_v) 在字典序下不超过 (g,n)；结果必须等于 Harer-Zagier 值
    """
    value = numeric_graph_sum(g, n, chi_closed, -1)
    expected = harer_zagier(g, n)
    if value != expected:
        raise DualityViolationError(
            f"({g},{n})：反演得到{format_fraction(value)}，Harer-Zagier 值为{format_fraction(expected)}"
        )
    return value


def check_triangularity(g: int, n: int) -> bool:
    """
    F̃_{g,n} 中含 F_{g,n} 的只有 Ver_{g,n} 一项（系数1、κ^0），
    其余顶点符号在字典序下严格小于 (g,n)
    """
    forward = graph_sum_forward(g, n)
    with_top = [(key, c) for key, c in forward.terms.items() if (g, n) in key[1]]
    if with_top != [((0, ((g, n),)), Fraction(1))]:
        return False
    return all(pair < (g, n) for pair in forward.symbols() if pair != (g, n))


# ------------------------------ Euler 表 ------------------------------
@dataclass
class EulerTable:
    """(g,n) -> (χ_open, χ_closed)，覆盖 1 <= 2g-2+n <= max_chi"""

    max_chi: int
    entries: Dict[Pair, Tuple[Fraction, Fraction]] = field(default_factory=dict)

    COLUMNS = ["g", "n", "chi_open", "chi_closed"]

    def to_frame(self) -> pd.DataFrame:
        rows = [
            [g, n, format_fraction(chi_open), format_fraction(closed)]
            for (g, n), (chi_open, closed) in self.entries.items()
        ]
        return pd.DataFrame(rows, columns=self.COLUMNS)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator="\n")

    def to_dict(self) -> dict:
        return {
            "max_chi": self.max_chi,
            "entries": [
                {"g": g, "n": n, "chi_open": format_fraction(o), "chi_closed": format_fraction(c)}
                for (g, n), (o, c) in self.entries.items()
            ],
        }


def euler_table(max_chi: int) -> EulerTable:
    """
    逐个 (g,n) 计算 χ(M̄)，并由 χ(M̄) 反演得到 χ(M)；每一项都与Harer-Zagier值比较
    :param max_chi: 最大 2g-2+n（>= 1）
    :return: Euler示性数表；任何一项往返不一致抛出 DualityViolationError
    """
    if max_chi < 1:
        raise DomainError(f"max_chi 必须 >= 1：{max_chi}")
    table = EulerTable(max_chi)
    for g, n in stable_pairs(max_chi):
        closed = chi_closed(g, n)
        chi_open = chi_open_inverted(g, n)
        table.entries[(g, n)] = (chi_open, closed)
        log.debug(f"χ(M_{{{g},{n}}})={format_fraction(chi_open)}，χ(M̄_{{{g},{n}}})={format_fraction(closed)}")
    return table


def verify_open_closed(max_chi: int) -> CheckReport:
    """开闭往返与三角性，逐项记录而不是遇错即停"""
    report = CheckReport(f"开闭对偶 2g-2+n<={max_chi}")
    for g, n in stable_pairs(max_chi):
        try:
            chi_open_inverted(g, n)
            report.record(f"反演=Harer-Zagier ({g},{n})", True)
        except DualityViolationError as e:
            report.record(f"反演=Harer-Zagier ({g},{n})", False, e.msg)
        report.record(f"三角性 ({g},{n})", check_triangularity(g, n))
    return report
