# -*- coding:utf-8 -*-
"""
对偶映射 φ_{g,n} 与带点图（dotted graph）展开

φ 的主路径走偏序公式：φ(Γ) = (-1)^{|E(Γ)|} · ĝ(Γ)，ĝ(Γ) = Σ_{Γ'<=Γ} ζ̃(Γ',Γ) Γ'。
dotted_expand_direct 按带标号粘合的定义独立重算 φ(Γ)，只作为对照。
带点图不单独建类型：一个带点图就等同于它展开后的形式和。
"""
from __future__ import annotations

import itertools
import operator
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

import numpy as np

from core.assert_util import CheckReport
from core.enumeration import FormalSum, GraphCatalog, catalog
from core.exception_handler import ConsistencyError
from core.exceptions import DomainError, StructuralError
from core.graph import (
    StableGraph,
    aut_order,
    canonical_key,
    encode_key,
    genus,
    half_edge_lift_count,
    is_connected,
    is_stable,
    refine_and_branch,
)
from core.poset import build_poset, generalized_zeta
from utils.common_util import identity_matrix, matrices_equal, sign, zero_matrix


# ------------------------------ 带标号稳定图 ------------------------------
@dataclass(frozen=True)
class LabeledStableGraph:
    """外腿带互不相同名字的稳定图；names[v] 为顶点 v 上外腿的名字（升序）"""

    graph: StableGraph
    names: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        names = tuple(tuple(sorted(int(x) for x in group)) for group in self.names)
        if len(names) != self.graph.num_vertices:
            raise StructuralError(f"名字分组数{len(names)}与顶点数{self.graph.num_vertices}不一致")
        for (_, ext), group in zip(self.graph.vertices, names):
            if len(group) != ext:
                raise StructuralError(f"顶点外腿数{ext}与名字个数{len(group)}不一致")
        flat = [name for group in names for name in group]
        if len(set(flat)) != len(flat):
            raise StructuralError(f"外腿名字有重复：{flat}")
        object.__setattr__(self, "names", names)

    @property
    def labels(self) -> Tuple[tuple, ...]:
        return tuple((g, ext) + group for (g, ext), group in zip(self.graph.vertices, self.names))


class LabeledCanonicalForm(NamedTuple):
    key: bytes
    graph: LabeledStableGraph
    vertex_automorphisms: int


@lru_cache(maxsize=65536)
def labeled_canonical_form(labeled: LabeledStableGraph) -> LabeledCanonicalForm:
    """顶点标签带上外腿名字，因此自同构必须固定每条外腿"""
    labels = labeled.labels
    order, edges, count = refine_and_branch(labels, labeled.graph.edges)
    rows = [labels[old] for old in order]
    graph = StableGraph(tuple(row[:2] for row in rows), edges)
    names = tuple(row[2:] for row in rows)
    return LabeledCanonicalForm(encode_key(rows, edges), LabeledStableGraph(graph, names), count)


def labeled_aut_order(labeled: LabeledStableGraph) -> int:
    """固定全部外腿的自同构个数（去掉外腿置换因子）"""
    if not is_connected(labeled.graph):
        raise DomainError("自同构群阶只对连通图定义")
    return labeled_canonical_form(labeled).vertex_automorphisms * half_edge_lift_count(
        labeled.graph, include_ext=False
    )


def _distributions(exts: Sequence[int], names: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    if not exts:
        yield ()
        return
    for chosen in itertools.combinations(names, exts[0]):
        rest = tuple(name for name in names if name not in chosen)
        for tail in _distributions(exts[1:], rest):
            yield (chosen,) + tail


def naming_set(graph: StableGraph, names: Sequence[int] = None) -> List[LabeledStableGraph]:
    """
    S_Γ：给 Γ 的外腿分配名字的全部不等价方式（按带标号规范键去重并排序）
    :param graph: 稳定图
    :param names: 名字集合（默认 0..n-1）
    """
    names = tuple(range(graph.n)) if names is None else tuple(names)
    if len(names) != graph.n or len(set(names)) != len(names):
        raise StructuralError(f"名字集合{names}与外腿数{graph.n}不匹配")
    exts = [ext for _, ext in graph.vertices]
    seen: Dict[bytes, LabeledStableGraph] = {}
    for distribution in _distributions(exts, names):
        form = labeled_canonical_form(LabeledStableGraph(graph, distribution))
        seen.setdefault(form.key, form.graph)
    return [seen[key] for key in sorted(seen)]


def naming_lemma_holds(graph: StableGraph) -> bool:
    """n!/|Aut(Γ)| = Σ_{Γ'∈S_Γ} 1/|Aut(Γ')|"""
    left = Fraction(factorial(graph.n), aut_order(graph))
    right = sum((Fraction(1, labeled_aut_order(lg)) for lg in naming_set(graph)), Fraction(0))
    return left == right


# ------------------------------ 对偶映射（偏序公式）------------------------------
def ghat(graph_catalog: GraphCatalog, i: int) -> FormalSum:
    """ĝ(Γ) = Σ_{Γ'<=Γ} ζ̃(Γ',Γ) Γ'"""
    poset = build_poset(graph_catalog)
    zeta = generalized_zeta(poset)
    return FormalSum(graph_catalog, {j: zeta[j, i] for j in range(poset.size) if poset.leq[j][i]})


def duality_map(graph_catalog: GraphCatalog, i: int) -> FormalSum:
    """φ(Γ) = (-1)^{|E(Γ)|} ĝ(Γ)"""
    if not 0 <= i < len(graph_catalog):
        raise DomainError(f"目录下标越界：{i}")
    return ghat(graph_catalog, i) * sign(graph_catalog.num_edges(i))


def duality_matrix(graph_catalog: GraphCatalog) -> np.ndarray:
    """M[j, i] = φ(Γ_i) 中 Γ_j 的系数"""
    matrix = zero_matrix(len(graph_catalog))
    for i in range(len(graph_catalog)):
        for j, coeff in duality_map(graph_catalog, i).coeffs.items():
            matrix[j, i] = coeff
    return matrix


def verify_involution(graph_catalog: GraphCatalog) -> CheckReport:
    """φ 在目录基下的矩阵满足 M² = I"""
    report = CheckReport(f"对合性 G^c_{graph_catalog.pair}")
    matrix = duality_matrix(graph_catalog)
    report.record("φ²=Id", matrices_equal(matrix.dot(matrix), identity_matrix(len(graph_catalog))))
    return report


def verify_duality_sum(graph_catalog: GraphCatalog) -> CheckReport:
    """Σ_Γ (-1)^{|E(Γ)|}/|Aut(Γ)| · ĝ(Γ) = Ver/n!"""
    report = CheckReport(f"对偶求和 G^c_{graph_catalog.pair}")
    total = FormalSum(graph_catalog)
    for i, aut in enumerate(graph_catalog.aut_orders):
        total = total + ghat(graph_catalog, i) * Fraction(sign(graph_catalog.num_edges(i)), aut)
    expected = FormalSum.basis(graph_catalog, graph_catalog.vertex_index, Fraction(1, factorial(graph_catalog.n)))
    report.record("Σ(-1)^|E|ĝ(Γ)/|Aut(Γ)|=Ver/n!", total == expected, f"实际{total!r}")
    return report


# ------------------------------ 带点图直接展开（对照路径）------------------------------
def _name_half_edges(graph: StableGraph) -> Tuple[List[List[int]], List[Tuple[int, int]]]:
    """
    按固定顺序给半边编号：先是各顶点的外腿，再按边序给每条内边的两个端点
    :return: (每个顶点上的名字列表, 每条内边两端的名字对)
    """
    stubs: List[List[int]] = [[] for _ in graph.vertices]
    next_name = 0
    for v, (_, ext) in enumerate(graph.vertices):
        stubs[v].extend(range(next_name, next_name + ext))
        next_name += ext
    pairs = []
    for u, w in graph.edges:
        stubs[u].append(next_name)
        stubs[w].append(next_name + 1)
        pairs.append((next_name, next_name + 1))
        next_name += 2
    return stubs, pairs


@lru_cache(maxsize=4096)
def _dotted_vertex_terms(vertex_genus: int, names: Tuple[int, ...]) -> Tuple[Tuple[LabeledStableGraph, Fraction], ...]:
    """带点顶点 = Σ_{Γ'} Γ'/|Aut(Γ')|，Γ' 取遍外腿以 names 命名的带标号稳定图"""
    terms = []
    for member in catalog(vertex_genus, len(names)).graphs:
        for labeled in naming_set(member, names):
            terms.append((labeled, Fraction(1, labeled_aut_order(labeled))))
    return tuple(terms)


def _glue(pieces: Sequence[LabeledStableGraph], pairs: Sequence[Tuple[int, int]]) -> StableGraph:
    """把同名外腿两两粘成内边，剩余外腿忘掉名字"""
    vertices: List[List[int]] = []
    edges: List[Tuple[int, int]] = []
    owner: Dict[int, int] = {}
    for piece in pieces:
        offset = len(vertices)
        for v, ((g, ext), names) in enumerate(zip(piece.graph.vertices, piece.names)):
            vertices.append([g, ext])
            for name in names:
                owner[name] = offset + v
        edges.extend((u + offset, w + offset) for u, w in piece.graph.edges)
    for a, b in pairs:
        x, y = owner[a], owner[b]
        vertices[x][1] -= 1
        vertices[y][1] -= 1
        edges.append((x, y))
    return StableGraph(tuple(tuple(v) for v in vertices), tuple(edges))


def dotted_expand_direct(graph: StableGraph) -> FormalSum:
    """
    按定义计算 φ(Γ)：剪开全部内边并给半边命名，每个顶点展开成带点顶点，
    按名字重新粘合、忘掉名字，最后乘以 (-1)^{|E(Γ)|}
    :param graph: 连通稳定图
    :return: G^c_{g,n} 上的形式和
    """
    if not is_connected(graph) or not is_stable(graph):
        raise DomainError("带点展开要求输入为连通稳定图")
    target = catalog(genus(graph), graph.n)
    stubs, pairs = _name_half_edges(graph)
    expansions = [
        _dotted_vertex_terms(vertex_genus, tuple(names))
        for (vertex_genus, _), names in zip(graph.vertices, stubs)
    ]
    coeffs: Dict[int, Fraction] = defaultdict(Fraction)
    for choice in itertools.product(*expansions):
        glued = _glue([labeled for labeled, _ in choice], pairs)
        j = target.index.get(canonical_key(glued))
        if j is None:
            raise ConsistencyError(f"粘合结果不在目录 G^c_{target.pair} 中")
        coeffs[j] += reduce(operator.mul, (weight for _, weight in choice), Fraction(1))
    return FormalSum(target, coeffs) * sign(graph.num_edges)


def check_dotted_oracle(graph_catalog: GraphCatalog) -> CheckReport:
    """偏序公式与带标号粘合两条路径逐项比较"""
    report = CheckReport(f"φ两路径对照 G^c_{graph_catalog.pair}")
    for i, graph in enumerate(graph_catalog.graphs):
        expected = duality_map(graph_catalog, i)
        actual = dotted_expand_direct(graph)
        report.record(f"Γ{i}", actual == expected, f"粘合{actual!r}，偏序公式{expected!r}")
    return report


def check_naming_lemma(graph_catalog: GraphCatalog) -> CheckReport:
    report = CheckReport(f"命名引理 G^c_{graph_catalog.pair}")
    for i, graph in enumerate(graph_catalog.graphs):
        report.record(f"Γ{i}", naming_lemma_holds(graph))
    return report
