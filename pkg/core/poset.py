# -*- coding:utf-8 -*-
"""
边收缩偏序与关联代数

Γ' <= Γ 当且仅当 Γ 可由 Γ' 收缩若干内边得到（收缩越多越“大”，Ver_{g,n} 为最大元）。
目录按 |E| 升序排列，因此 i < j 的严格关系只会出现在 |E_i| > |E_j| 时。
"""
from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from typing import Callable, Iterable, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from core.assert_util import CheckReport
from core.enumeration import GraphCatalog, on_clear_catalogs
from core.exception_handler import ConsistencyError
from core.exceptions import DomainError
from core.graph import StableGraph, canonical_key
from core.logger import log
from utils.common_util import freeze, identity_matrix, matrices_equal, sign, zero_matrix


# ------------------------------ 边收缩 ------------------------------
def contract_edges(graph: StableGraph, edge_ids: Iterable[int]) -> StableGraph:
    """
    同时收缩一组内边：被收缩边的每个连通分支合并成一个顶点，
    新亏格 = Σ g_v + (分支内被收缩边数 - 分支顶点数 + 1)，外腿数相加
    :param graph: 稳定图
    :param edge_ids: 边标识（graph.edges 中的下标）
    :return: 收缩后的图（顶点按各分支最小旧下标排序）
    """
    ids = set(edge_ids)
    for e in ids:
        if not isinstance(e, int) or not 0 <= e < graph.num_edges:
            raise DomainError(f"边标识{e!r}不是内边（共{graph.num_edges}条内边）")
    merged = nx.MultiGraph()
    merged.add_nodes_from(range(graph.num_vertices))
    merged.add_edges_from(graph.edges[e] for e in ids)
    components = sorted(sorted(nodes) for nodes in nx.connected_components(merged))
    new_index = {old: new for new, nodes in enumerate(components) for old in nodes}
    inner = [0] * len(components)
    for e in ids:
        inner[new_index[graph.edges[e][0]]] += 1
    vertices = []
    for new, nodes in enumerate(components):
        genus = sum(graph.vertices[v][0] for v in nodes) + inner[new] - len(nodes) + 1
        ext = sum(graph.vertices[v][1] for v in nodes)
        vertices.append((genus, ext))
    edges = tuple(
        (new_index[u], new_index[v]) for e, (u, v) in enumerate(graph.edges) if e not in ids
    )
    return StableGraph(tuple(vertices), edges)


def contract(graph: StableGraph, edge_id: int) -> StableGraph:
    """
    收缩一条内边：自环 -> 删除自环、顶点亏格+1；
    非自环 {u,v} -> 合并 u,v（亏格相加），其余 u-v 平行边变为自环
    """
    return contract_edges(graph, [edge_id])


def _edge_subsets(num_edges: int) -> Iterator[Tuple[int, ...]]:
    for size in range(num_edges + 1):
        yield from itertools.combinations(range(num_edges), size)


# ------------------------------ 收缩偏序 ------------------------------
@dataclass(frozen=True, eq=False)
class ContractionPoset:
    """
    catalog: 图目录
    counts: counts[i][j] = |C(Γ_i, Γ_j)|，即收缩后得到 Γ_j 的边子集个数
    leq: leq[i][j] 为真当且仅当 Γ_i <= Γ_j
    covers: 覆盖关系 (lower, upper)，即 lower < upper 且中间没有其他元素
    """

    catalog: GraphCatalog
    counts: Tuple[Tuple[int, ...], ...]
    leq: Tuple[Tuple[bool, ...], ...]
    covers: Tuple[Tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.catalog)

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def rank(self, i: int) -> int:
        """内边数 |E(Γ_i)|"""
        return self.catalog.num_edges(i)

    def interval(self, i: int, j: int) -> List[int]:
        """闭区间 [Γ_i, Γ_j]"""
        return [k for k in range(self.size) if self.leq[i][k] and self.leq[k][j]]

    def maximum(self) -> int:
        """唯一最大元（Ver_{g,n}）"""
        tops = [j for j in range(self.size) if all(self.leq[i][j] for i in range(self.size))]
        if len(tops) != 1:
            raise ConsistencyError(f"G^c_{self.catalog.pair} 的最大元个数为{len(tops)}")
        return tops[0]

    def minimal_elements(self) -> List[int]:
        return [j for j in range(self.size) if not any(self.lt(i, j) for i in range(self.size))]


@lru_cache(maxsize=None)
def build_poset(graph_catalog: GraphCatalog) -> ContractionPoset:
    """
    对每个 Γ_i 穷举 E(Γ_i) 的全部 2^|E| 个子集，收缩后按规范键归类，得到 |C(Γ_i, Γ_j)|；
    偏序由计数矩阵导出，覆盖关系取其传递约简
    """
    size = len(graph_catalog)
    counts = [[0] * size for _ in range(size)]
    for i, graph in enumerate(graph_catalog.graphs):
        for subset in _edge_subsets(graph.num_edges):
            key = canonical_key(contract_edges(graph, subset))
            j = graph_catalog.index.get(key)
            if j is None:
                raise ConsistencyError(f"收缩结果不在目录 G^c_{graph_catalog.pair} 中：Γ_{i}，边子集{subset}")
            counts[i][j] += 1
    leq = tuple(tuple(c > 0 for c in row) for row in counts)
    order = nx.DiGraph()
    order.add_nodes_from(range(size))
    order.add_edges_from((i, j) for i in range(size) for j in range(size) if i != j and leq[i][j])
    covers = tuple(sorted(nx.transitive_reduction(order).edges()))
    log.debug(f"偏序构造完成：G^c_{graph_catalog.pair}，{size}个元素，{len(covers)}条覆盖关系")
    return ContractionPoset(graph_catalog, tuple(tuple(row) for row in counts), leq, covers)


# ------------------------------ 关联代数 ------------------------------
@dataclass(frozen=True, eq=False)
class IncidenceFunction:
    """关联函数 f(x,y)：有理数方阵，支撑集包含于偏序关系"""

    poset: ContractionPoset
    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        size = self.poset.size
        if self.values.shape != (size, size):
            raise DomainError(f"关联函数形状{self.values.shape}与偏序大小{size}不一致")
        for i in range(size):
            for j in range(size):
                if self.values[i, j] and not self.poset.leq[i][j]:
                    raise DomainError(f"关联函数在非可比对 ({i},{j}) 上取非零值")
        object.__setattr__(self, "values", freeze(self.values))

    @classmethod
    def from_function(cls, poset: ContractionPoset, func: Callable[[int, int], Fraction], name: str = "") -> "IncidenceFunction":
        """只在 x <= y 处取值"""
        values = zero_matrix(poset.size)
        for i in range(poset.size):
            for j in range(poset.size):
                if poset.leq[i][j]:
                    values[i, j] = Fraction(func(i, j))
        return cls(poset, values, name)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        return self.values[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceFunction):
            return NotImplemented
        return self.poset is other.poset and matrices_equal(self.values, other.values)

    __hash__ = object.__hash__

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        return convolve(self, other)


def convolve(f: IncidenceFunction, g: IncidenceFunction) -> IncidenceFunction:
    """h(x,y) = Σ_{z ∈ [x,y]} f(x,z) g(z,y)"""
    if f.poset is not g.poset:
        raise DomainError("卷积的两个关联函数不属于同一偏序")
    return IncidenceFunction(f.poset, f.values.dot(g.values), f"{f.name}*{g.name}")


@lru_cache(maxsize=None)
def delta(poset: ContractionPoset) -> IncidenceFunction:
    return IncidenceFunction(poset, identity_matrix(poset.size), "δ")


@lru_cache(maxsize=None)
def classical_zeta(poset: ContractionPoset) -> IncidenceFunction:
    return IncidenceFunction.from_function(poset, lambda i, j: 1, "ζ")


@lru_cache(maxsize=None)
def classical_mobius(poset: ContractionPoset) -> IncidenceFunction:
    """μ(x,x) = 1，μ(x,y) = -Σ_{x<=z<y} μ(x,z)"""
    leq = poset.leq
    mu = zero_matrix(poset.size)
    for x in range(poset.size):
        mu[x, x] = Fraction(1)
        # y 从 x 往“上”走：严格大于 x 的元素下标更小
        for y in range(x - 1, -1, -1):
            if leq[x][y]:
                mu[x, y] = -sum(
                    (mu[x, z] for z in range(y + 1, x + 1) if leq[x][z] and leq[z][y]),
                    Fraction(0),
                )
    return IncidenceFunction(poset, mu, "μ")


@lru_cache(maxsize=None)
def generalized_zeta(poset: ContractionPoset) -> IncidenceFunction:
    """ζ̃(Γ', Γ) = |Aut(Γ)| / |Aut(Γ')| · |C(Γ', Γ)|"""
    auts = poset.catalog.aut_orders
    return IncidenceFunction.from_function(
        poset, lambda i, j: Fraction(auts[j], auts[i]) * poset.counts[i][j], "ζ̃"
    )


@lru_cache(maxsize=None)
def generalized_mobius(poset: ContractionPoset) -> IncidenceFunction:
    """μ̃(x,x) = 1，μ̃(x,z) = -Σ_{y ∈ (x,z]} ζ̃(x,y) μ̃(y,z)"""
    leq = poset.leq
    zeta = generalized_zeta(poset).values
    mu = zero_matrix(poset.size)
    for z in range(poset.size):
        mu[z, z] = Fraction(1)
        for x in range(z + 1, poset.size):
            if leq[x][z]:
                mu[x, z] = -sum(
                    (zeta[x, y] * mu[y, z] for y in range(z, x) if leq[x][y] and leq[y][z]),
                    Fraction(0),
                )
    return IncidenceFunction(poset, mu, "μ̃")


@on_clear_catalogs
def clear_poset_caches():
    """以目录和偏序对象为键的缓存随目录表一起清空"""
    for cached in (build_poset, delta, classical_zeta, classical_mobius, generalized_zeta, generalized_mobius):
        cached.cache_clear()


# ------------------------------ 广义Möbius反演 ------------------------------
def _apply_down(poset: ContractionPoset, kernel: np.ndarray, values: Sequence) -> list:
    if len(values) != poset.size:
        raise DomainError(f"向量长度{len(values)}与偏序大小{poset.size}不一致")
    # y = x 一项总存在，因此求和从它开始，值的类型可以是任意支持 + 与有理数乘法的对象
    return [
        reduce(operator.add, [values[y] * kernel[y, x] for y in range(poset.size) if poset.leq[y][x]])
        for x in range(poset.size)
    ]


def generalized_inversion(poset: ContractionPoset, values: Sequence) -> list:
    """g̃(x) = Σ_{y<=x} f̃(y) ζ̃(y,x)"""
    return _apply_down(poset, generalized_zeta(poset).values, values)


def generalized_inversion_inverse(poset: ContractionPoset, values: Sequence) -> list:
    """f̃(x) = Σ_{y<=x} g̃(y) μ̃(y,x)"""
    return _apply_down(poset, generalized_mobius(poset).values, values)


# ------------------------------ 恒等式校验 ------------------------------
def is_trivalent_genus_zero(graph: StableGraph) -> bool:
    return all(g == 0 for g, _ in graph.vertices) and all(v == 3 for v in graph.valences)


def check_mobius_identities(poset: ContractionPoset) -> CheckReport:
    """
    偏序上的恒等式：ζ*μ=δ=μ*ζ、ζ̃*μ̃=δ=μ̃*ζ̃、μ̃(Γ,Ver) 闭式、符号恒等式、
    交错和恒等式、唯一最大元、极小元 = 亏格0三价图
    """
    graph_catalog = poset.catalog
    report = CheckReport(f"Möbius恒等式 G^c_{graph_catalog.pair}")
    identity = delta(poset)
    zeta, mu = classical_zeta(poset), classical_mobius(poset)
    zeta_t, mu_t = generalized_zeta(poset), generalized_mobius(poset)

    report.record("ζ*μ=δ", convolve(zeta, mu) == identity)
    report.record("μ*ζ=δ", convolve(mu, zeta) == identity)
    report.record("ζ̃*μ̃=δ", convolve(zeta_t, mu_t) == identity)
    report.record("μ̃*ζ̃=δ", convolve(mu_t, zeta_t) == identity)

    top = poset.maximum()
    report.record("Ver为唯一最大元", top == graph_catalog.vertex_index, f"最大元下标{top}")

    n_factorial = factorial(graph_catalog.n)
    bad = [
        i for i in range(poset.size)
        if mu_t[i, top] != sign(poset.rank(i)) * Fraction(n_factorial, graph_catalog.aut_orders[i])
    ]
    report.record("μ̃(Γ,Ver)=(-1)^|E|·n!/|Aut|", not bad, f"不满足的元素：{bad}")

    bad = [
        (i, j) for i in range(poset.size) for j in range(poset.size)
        if poset.leq[i][j] and mu_t[i, j] != sign(poset.rank(i) + poset.rank(j)) * zeta_t[i, j]
    ]
    report.record("μ̃=(-1)^{|E'|+|E|}ζ̃", not bad, f"不满足的元素对：{bad}")

    bad = [
        i for i in range(poset.size) if i != top
        and sum(sign(poset.rank(j)) * poset.counts[i][j] for j in range(poset.size)) != 0
    ]
    report.record("交错和Σ(-1)^|E'|·|C(Γ,Γ')|=0", not bad, f"不满足的元素：{bad}")

    expected = [i for i, graph in enumerate(graph_catalog.graphs) if is_trivalent_genus_zero(graph)]
    minimal = poset.minimal_elements()
    report.record("极小元=亏格0三价图", minimal == expected, f"极小元{minimal}，三价图{expected}")
    return report
