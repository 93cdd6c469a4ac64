# -*- coding:utf-8 -*-
"""
Feynman规则：顶点 -> F_{g_v,val_v}，内边 -> κ，图权重 w_Γ 为二者之积

F̃_{g,n} = n! · Σ_Γ κ^{|E|}/|Aut(Γ)| Π F_{g_v,val_v}
F_{g,n} = n! · Σ_Γ (-κ)^{|E|}/|Aut(Γ)| Π F̃_{g_v,val_v}
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from typing import Callable, Dict, Iterable, List, Mapping, Tuple, Union

from core.assert_util import CheckReport
from core.enumeration import catalog, stable_pairs
from core.exception_handler import ConsistencyError, DataNotFoundError
from core.exceptions import DomainError, StructuralError
from core.graph import StableGraph
from core.poset import (
    ContractionPoset,
    generalized_inversion,
    generalized_inversion_inverse,
    generalized_zeta,
)
from utils.common_util import chi_grade, format_fraction, format_pair, parse_fraction, parse_pair, sign

Pair = Tuple[int, int]
Monomial = Tuple[int, Tuple[Pair, ...]]
Scalar = Union[int, Fraction]


# ------------------------------ 符号多项式 ------------------------------
class SymbolicWeight:
    """
    关于 κ 与顶点符号 F_{g,n} 的有理系数多项式
    单项式键：(κ 的次数, 升序排列的 (g,n) 多重集)
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] = None):
        merged: Dict[Monomial, Fraction] = {}
        for (power, factors), coeff in (terms or {}).items():
            key = (int(power), tuple(sorted((int(g), int(n)) for g, n in factors)))
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        self.terms: Dict[Monomial, Fraction] = {k: c for k, c in sorted(merged.items()) if c}

    # ---------- 构造 ----------
    @classmethod
    def zero(cls) -> "SymbolicWeight":
        return cls()

    @classmethod
    def constant(cls, value: Scalar) -> "SymbolicWeight":
        return cls({(0, ()): value})

    @classmethod
    def one(cls) -> "SymbolicWeight":
        return cls.constant(1)

    @classmethod
    def kappa(cls, power: int = 1) -> "SymbolicWeight":
        return cls({(power, ()): 1})

    @classmethod
    def symbol(cls, g: int, n: int) -> "SymbolicWeight":
        return cls({(0, ((g, n),)): 1})

    @staticmethod
    def _coerce(value) -> "SymbolicWeight":
        if isinstance(value, SymbolicWeight):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return SymbolicWeight.constant(value)
        raise TypeError(f"无法转换为SymbolicWeight：{value!r}")

    # ---------- 运算 ----------
    def __add__(self, other) -> "SymbolicWeight":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        merged = dict(self.terms)
        for key, coeff in other.terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return SymbolicWeight(merged)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicWeight":
        return SymbolicWeight({key: -coeff for key, coeff in self.terms.items()})

    def __sub__(self, other) -> "SymbolicWeight":
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "SymbolicWeight":
        return (-self) + other

    def __mul__(self, other) -> "SymbolicWeight":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        product: Dict[Monomial, Fraction] = {}
        for (p1, f1), c1 in self.terms.items():
            for (p2, f2), c2 in other.terms.items():
                key = (p1 + p2, tuple(sorted(f1 + f2)))
                product[key] = product.get(key, Fraction(0)) + c1 * c2
        return SymbolicWeight(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SymbolicWeight":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"只支持非负整数次幂：{exponent!r}")
        result = SymbolicWeight.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, power: int, factors: Iterable[Pair] = ()) -> Fraction:
        return self.terms.get((power, tuple(sorted(factors))), Fraction(0))

    def symbols(self) -> List[Pair]:
        return sorted({pair for _, factors in self.terms for pair in factors})

    # ---------- 代入与求值 ----------
    def substitute(self, symbols: Mapping[Pair, "SymbolicWeight"] = None, kappa=None) -> "SymbolicWeight":
        """
        代入顶点符号与 κ 并完全展开（所有求和都是有限的，不做截断）
        :param symbols: (g,n) -> 多项式，未给出的符号保持不变
        :param kappa: κ 的替换值（多项式或有理数），None 表示不变
        """
        symbols = symbols or {}
        kappa_value = SymbolicWeight.kappa() if kappa is None else self._coerce(kappa)
        result = SymbolicWeight.zero()
        for (power, factors), coeff in self.terms.items():
            term = SymbolicWeight.constant(coeff) * kappa_value ** power
            for pair in factors:
                term = term * symbols.get(pair, SymbolicWeight.symbol(*pair))
            result = result + term
        return result

    def evaluate(self, assignment: "FeynmanAssignment") -> Fraction:
        total = Fraction(0)
        for (power, factors), coeff in self.terms.items():
            value = coeff * assignment.kappa ** power
            for g, n in factors:
                value *= assignment.value(g, n)
            total += value
        return total

    # ---------- 序列化与展示 ----------
    def to_dict(self) -> dict:
        return {
            "terms": [
                {"kappa": power, "F": [[g, n] for g, n in factors], "coeff": format_fraction(coeff)}
                for (power, factors), coeff in self.terms.items()
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SymbolicWeight":
        try:
            return cls({
                (term["kappa"], tuple(tuple(pair) for pair in term["F"])): parse_fraction(term["coeff"])
                for term in data["terms"]
            })
        except (KeyError, TypeError, ValueError) as e:
            raise StructuralError(f"多项式JSON格式错误：{e}") from e

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (power, factors), coeff in self.terms.items():
            pieces = []
            if coeff != 1 or (power == 0 and not factors):
                pieces.append(format_fraction(coeff))
            if power:
                pieces.append("κ" if power == 1 else f"κ^{power}")
            pieces.extend(f"F_{{{g},{n}}}" for g, n in factors)
            parts.append("·".join(pieces))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymbolicWeight({self})"


# ------------------------------ 数值赋值 ------------------------------
@dataclass(frozen=True)
class FeynmanAssignment:
    """F_{g,n} 与 κ 的有理数取值"""

    values: Mapping[Pair, Fraction]
    kappa: Fraction = Fraction(1)
    max_chi: int = field(init=False)

    def __post_init__(self):
        values = {}
        for pair, value in dict(self.values).items():
            g, n = (int(x) for x in pair)
            if g < 0 or n < 0 or chi_grade(g, n) <= 0:
                raise DomainError(f"({g},{n}) 不满足 2g-2+n>0，不能作为顶点符号")
            values[(g, n)] = Fraction(value)
        object.__setattr__(self, "values", dict(sorted(values.items())))
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        object.__setattr__(self, "max_chi", max((chi_grade(*p) for p in values), default=0))

    def value(self, g: int, n: int) -> Fraction:
        try:
            return self.values[(g, n)]
        except KeyError:
            raise DataNotFoundError(f"缺少 F_{{{g},{n}}} 的取值") from None

    def require(self, pairs: Iterable[Pair]):
        missing = [pair for pair in pairs if pair not in self.values]
        if missing:
            raise DataNotFoundError(f"缺少以下 (g,n) 的取值：{', '.join(format_pair(p) for p in missing)}")

    def covers(self, max_chi: int) -> bool:
        return all(pair in self.values for pair in stable_pairs(max_chi))

    @classmethod
    def from_function(cls, func: Callable[[int, int], Scalar], max_chi: int, kappa: Scalar = 1) -> "FeynmanAssignment":
        return cls({pair: func(*pair) for pair in stable_pairs(max_chi)}, Fraction(kappa))

    @classmethod
    def zero(cls, max_chi: int, kappa: Scalar = 1) -> "FeynmanAssignment":
        return cls.from_function(lambda g, n: 0, max_chi, kappa)

    @classmethod
    def from_json(cls, data: Mapping[str, str], kappa: Scalar = 1) -> "FeynmanAssignment":
        """输入格式：{"(g,n)": "p/q", ...}"""
        if not isinstance(data, Mapping):
            raise DomainError("输入必须是 \"(g,n)\" -> \"p/q\" 形式的JSON对象")
        return cls({parse_pair(key): parse_fraction(value) for key, value in data.items()}, Fraction(kappa))

    def to_json(self) -> Dict[str, str]:
        return {format_pair(pair): format_fraction(value) for pair, value in self.values.items()}


# ------------------------------ 图权重与图和 ------------------------------
def graph_weight(graph: StableGraph) -> SymbolicWeight:
    """w_Γ = κ^{|E|} · Π F_{g_v,val_v}"""
    factors = tuple((g, val) for (g, _), val in zip(graph.vertices, graph.valences))
    return SymbolicWeight({(graph.num_edges, factors): 1})


@lru_cache(maxsize=None)
def realized_npoint(g: int, n: int) -> SymbolicWeight:
    """实现后的抽象n点函数：Σ_Γ w_Γ / |Aut(Γ)|"""
    graph_catalog = catalog(g, n)
    return reduce(operator.add, (
        graph_weight(graph) * Fraction(1, aut)
        for graph, aut in zip(graph_catalog.graphs, graph_catalog.aut_orders)
    ))


@lru_cache(maxsize=None)
def graph_sum_forward(g: int, n: int) -> SymbolicWeight:
    """F̃_{g,n} = n! · Σ_Γ κ^{|E|}/|Aut(Γ)| Π F_{g_v,val_v}"""
    return realized_npoint(g, n) * factorial(n)


@lru_cache(maxsize=None)
def graph_sum_inverse(g: int, n: int) -> SymbolicWeight:
    """n! · Σ_Γ (-κ)^{|E|}/|Aut(Γ)| Π F̃_{g_v,val_v}，顶点符号在此处读作 F̃"""
    graph_catalog = catalog(g, n)
    total = reduce(operator.add, (
        graph_weight(graph) * Fraction(sign(graph.num_edges), aut)
        for graph, aut in zip(graph_catalog.graphs, graph_catalog.aut_orders)
    ))
    return total * factorial(n)


def symbolic_inversion(g: int, n: int) -> SymbolicWeight:
    """把 F̃ = graph_sum_forward 代入 graph_sum_inverse 并展开，结果应恰为 F_{g,n}"""
    inverse = graph_sum_inverse(g, n)
    return inverse.substitute({pair: graph_sum_forward(*pair) for pair in inverse.symbols()})


def verify_symbolic_roundtrip(max_chi: int) -> CheckReport:
    report = CheckReport(f"符号反演往返 2g-2+n<={max_chi}")
    for g, n in stable_pairs(max_chi):
        recovered = symbolic_inversion(g, n)
        report.record(f"F->F̃->F ({g},{n})", recovered == SymbolicWeight.symbol(g, n), f"得到{recovered}")
        at_zero = graph_sum_forward(g, n).substitute(kappa=0)
        report.record(f"κ=0时F̃=F ({g},{n})", at_zero == SymbolicWeight.symbol(g, n), f"得到{at_zero}")
    return report


# ------------------------------ 数值特化 ------------------------------
def numeric_graph_sum(g: int, n: int, vertex_value: Callable[[int, int], Fraction], kappa: Scalar) -> Fraction:
    """n! · Σ_Γ κ^{|E|}/|Aut(Γ)| Π vertex_value(g_v, val_v)"""
    graph_catalog = catalog(g, n)
    kappa = Fraction(kappa)
    total = Fraction(0)
    for graph, aut in zip(graph_catalog.graphs, graph_catalog.aut_orders):
        term = Fraction(kappa ** graph.num_edges, aut)
        for (vertex_genus, _), valence in zip(graph.vertices, graph.valences):
            term *= vertex_value(vertex_genus, valence)
        total += term
    return total * factorial(n)


def forward_values(assignment: FeynmanAssignment, max_chi: int) -> Dict[Pair, Fraction]:
    """数值 F̃_{g,n}，2g-2+n <= max_chi"""
    pairs = stable_pairs(max_chi)
    assignment.require(pairs)
    return {pair: numeric_graph_sum(*pair, assignment.value, assignment.kappa) for pair in pairs}


def inverse_values(tilde: FeynmanAssignment, max_chi: int) -> Dict[Pair, Fraction]:
    """数值反演：把 tilde 中的值当作 F̃，用 -κ 做同一图和"""
    pairs = stable_pairs(max_chi)
    tilde.require(pairs)
    return {pair: numeric_graph_sum(*pair, tilde.value, -tilde.kappa) for pair in pairs}


# ------------------------------ g̃ 与实现的反演公式 ------------------------------
def gtilde_of_graph(poset: ContractionPoset, i: int) -> SymbolicWeight:
    """
    g̃(Γ) 的两种算法：
    (a) Σ_{Γ'<=Γ} ζ̃(Γ',Γ) · w_{Γ'}
    (b) κ^{|E(Γ)|} · Π_v (val_v! · Σ_{Γ_v} w/|Aut|)，即每个顶点换成实现后的n点函数
    两者不一致时抛出 ConsistencyError，返回 (a)
    """
    graph_catalog = poset.catalog
    zeta = generalized_zeta(poset)
    by_poset = reduce(operator.add, (
        graph_weight(graph_catalog[j]) * zeta[j, i] for j in range(poset.size) if poset.leq[j][i]
    ))
    graph = graph_catalog[i]
    by_product = SymbolicWeight.kappa(graph.num_edges)
    for (vertex_genus, _), valence in zip(graph.vertices, graph.valences):
        by_product = by_product * (realized_npoint(vertex_genus, valence) * factorial(valence))
    if by_poset != by_product:
        raise ConsistencyError(f"g̃(Γ{i}) 两种算法不一致：{by_poset} ≠ {by_product}")
    return by_poset


def verify_realized_inversion(poset: ContractionPoset) -> CheckReport:
    """
    f̃ = w_Γ 经 ζ̃ 得到 g̃，再经 μ̃ 还原 f̃；
    并由 μ̃(Γ,Ver) 的闭式还原 F_{g,n} = Σ_Γ (-1)^{|E|} n!/|Aut(Γ)| · g̃(Γ)
    """
    graph_catalog = poset.catalog
    g, n = graph_catalog.pair
    report = CheckReport(f"实现的反演公式 G^c_{graph_catalog.pair}")
    weights = [graph_weight(graph) for graph in graph_catalog.graphs]
    gtilde = generalized_inversion(poset, weights)
    report.record("g̃=Σζ̃·w 与乘积公式一致", all(
        gtilde[i] == gtilde_of_graph(poset, i) for i in range(poset.size)
    ))
    report.record("μ̃还原w_Γ", generalized_inversion_inverse(poset, gtilde) == weights)
    report.record("g̃(Ver)=F̃", gtilde[graph_catalog.vertex_index] == graph_sum_forward(g, n))
    recovered = reduce(operator.add, (
        gtilde[i] * Fraction(sign(graph_catalog.num_edges(i)) * factorial(n), aut)
        for i, aut in enumerate(graph_catalog.aut_orders)
    ))
    report.record("F_{g,n}=Σ(-1)^|E|n!/|Aut|·g̃", recovered == SymbolicWeight.symbol(g, n), f"得到{recovered}")
    return report
