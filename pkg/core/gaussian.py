# -*- coding:utf-8 -*-
"""
一维形式高斯积分（Wick展开）给出的 F̃_{g,n}，与图和完全独立

截断级数中的单项式 t^a z^b y^c（t = λ²，a 可为负），分次为 2a + b + c。
连通部分每一项分次 >= 1，且分次在乘法下可加，因此按分次截断是良定的。
积分按 Wick 泛函定义：y^{2m} -> (2m-1)!!·(κt)^m，奇数次 -> 0。
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Mapping, Tuple

from core.assert_util import CheckReport
from core.enumeration import stable_pairs
from core.exceptions import DomainError
from core.feynman import FeynmanAssignment, forward_values
from utils.common_util import format_fraction

Key = Tuple[int, int, int]
Pair = Tuple[int, int]


def double_factorial(k: int) -> int:
    """k!!，约定 (-1)!! = 0!! = 1"""
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


class TruncatedSeries:
    """Σ c_{a,b,c} t^a z^b y^c，只保留分次 <= max_grade 的项"""

    __slots__ = ("terms", "max_grade")

    def __init__(self, terms: Mapping[Key, Fraction], max_grade: int):
        self.max_grade = max_grade
        self.terms: Dict[Key, Fraction] = {
            key: Fraction(c) for key, c in terms.items() if c and self.grade(key) <= max_grade
        }

    @staticmethod
    def grade(key: Key) -> int:
        a, b, c = key
        return 2 * a + b + c

    @classmethod
    def one(cls, max_grade: int) -> "TruncatedSeries":
        return cls({(0, 0, 0): Fraction(1)}, max_grade)

    def min_grade(self) -> int:
        return min((self.grade(key) for key in self.terms), default=self.max_grade + 1)

    def coefficient(self, a: int, b: int, c: int = 0) -> Fraction:
        return self.terms.get((a, b, c), Fraction(0))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, Fraction(0)) + c
        return TruncatedSeries(merged, min(self.max_grade, other.max_grade))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def scale(self, factor) -> "TruncatedSeries":
        return TruncatedSeries({key: c * factor for key, c in self.terms.items()}, self.max_grade)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        max_grade = min(self.max_grade, other.max_grade)
        product: Dict[Key, Fraction] = {}
        for k1, c1 in self.terms.items():
            g1 = self.grade(k1)
            for k2, c2 in other.terms.items():
                if g1 + self.grade(k2) > max_grade:
                    continue
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return TruncatedSeries(product, max_grade)

    def _powers(self) -> List["TruncatedSeries"]:
        """[1, U, U², ..., U^D]，要求 U 的最低分次 >= 1"""
        if self.terms and self.min_grade() < 1:
            raise DomainError("级数含分次 <= 0 的项，exp/log 的截断不收敛")
        powers = [TruncatedSeries.one(self.max_grade)]
        for _ in range(self.max_grade):
            powers.append(powers[-1] * self)
        return powers

    def exp(self) -> "TruncatedSeries":
        """exp(S) = Σ_{k<=D} S^k/k!"""
        result = TruncatedSeries({}, self.max_grade)
        for k, power in enumerate(self._powers()):
            result = result + power.scale(Fraction(1, factorial(k)))
        return result

    def log(self) -> "TruncatedSeries":
        """log(1 + U) = Σ_{k>=1} (-1)^{k+1} U^k/k"""
        if self.coefficient(0, 0, 0) != 1:
            raise DomainError("取对数要求常数项为1")
        rest = self - TruncatedSeries.one(self.max_grade)
        result = TruncatedSeries({}, self.max_grade)
        for k, power in enumerate(rest._powers()):
            if k:
                result = result + power.scale(Fraction((-1) ** (k + 1), k))
        return result

    def wick(self, kappa: Fraction) -> "TruncatedSeries":
        """对 y 做形式高斯积分：y^{2m} -> (2m-1)!!·κ^m·t^m，奇数次项消失"""
        result: Dict[Key, Fraction] = {}
        for (a, b, c), coeff in self.terms.items():
            if c % 2:
                continue
            m = c // 2
            key = (a + m, b, 0)
            result[key] = result.get(key, Fraction(0)) + coeff * double_factorial(2 * m - 1) * kappa ** m
        return TruncatedSeries(result, self.max_grade)


def action_series(assignment: FeynmanAssignment, max_chi: int) -> TruncatedSeries:
    """S(z+y) = Σ_{g,n} t^{g-1} F_{g,n} (z+y)^n / n!"""
    terms: Dict[Key, Fraction] = {}
    for g, n in stable_pairs(max_chi):
        base = assignment.value(g, n) / factorial(n)
        for k in range(n + 1):
            key = (g - 1, k, n - k)
            terms[key] = terms.get(key, Fraction(0)) + base * comb(n, k)
    return TruncatedSeries(terms, max_chi)


def gaussian_forward(assignment: FeynmanAssignment, max_chi: int) -> Dict[Pair, Fraction]:
    """
    F̃_{g,n} = n! · [t^{g-1} z^n] log ∫ exp(S(z+y)) dμ_κ(y)
    :param assignment: F_{g,n} 取值（需覆盖全部 2g-2+n <= max_chi）与 κ
    :param max_chi: 截断分次 D
    """
    if max_chi < 1:
        raise DomainError(f"截断分次必须 >= 1：{max_chi}")
    pairs = stable_pairs(max_chi)
    assignment.require(pairs)
    free_energy = action_series(assignment, max_chi).exp().wick(assignment.kappa).log()
    return {(g, n): factorial(n) * free_energy.coefficient(g - 1, n) for g, n in pairs}


def gaussian_roundtrip(assignment: FeynmanAssignment, max_chi: int) -> CheckReport:
    """先用 κ 再用 -κ 做两次高斯积分，应精确还原输入"""
    report = CheckReport(f"高斯积分往返 D={max_chi}")
    forward = gaussian_forward(assignment, max_chi)
    back = gaussian_forward(FeynmanAssignment(forward, -assignment.kappa), max_chi)
    for pair, value in back.items():
        expected = assignment.value(*pair)
        report.record(f"F̃^∨=F {pair}", value == expected, f"还原{format_fraction(value)}，输入{format_fraction(expected)}")
    return report


def oracle_rows(assignment: FeynmanAssignment, max_chi: int) -> List[dict]:
    """逐个 (g,n) 列出高斯积分值、图和值与是否一致"""
    oracle = gaussian_forward(assignment, max_chi)
    graph_sum = forward_values(assignment, max_chi)
    return [
        {
            "g": g,
            "n": n,
            "oracle": format_fraction(oracle[(g, n)]),
            "graph_sum": format_fraction(graph_sum[(g, n)]),
            "match": oracle[(g, n)] == graph_sum[(g, n)],
        }
        for g, n in stable_pairs(max_chi)
    ]


def oracle_report(rows: List[dict], max_chi: int) -> CheckReport:
    """把 oracle_rows 的逐行比较结果整理成校验报告"""
    report = CheckReport(f"高斯积分对照图和 D={max_chi}")
    for row in rows:
        report.record(f"({row['g']},{row['n']})", row["match"], f"积分{row['oracle']}，图和{row['graph_sum']}")
    return report


def verify_gaussian_oracle(assignment: FeynmanAssignment, max_chi: int) -> CheckReport:
    return oracle_report(oracle_rows(assignment, max_chi), max_chi)


def grading_consistency(assignment: FeynmanAssignment, max_chi: int) -> CheckReport:
    """截断在 D 与 D+1 时，分次 <= D 的输出必须一致"""
    report = CheckReport(f"截断一致性 D={max_chi}")
    lower = gaussian_forward(assignment, max_chi)
    upper = gaussian_forward(assignment, max_chi + 1)
    for pair, value in lower.items():
        report.record(f"{pair}", upper[pair] == value)
    return report
