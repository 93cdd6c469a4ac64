# -*- coding:utf-8 -*-
"""
稳定图数据模型：稳定性、亏格、连通性、规范形式（canonical key）与自同构群阶

顶点记为 (genus, ext)，ext 为该顶点上（不带标号的）外腿数；
边为顶点下标的无序对，u == v 表示自环。半边不显式存储：
外腿各贡献1个半边，每条内边贡献2个。
"""
from __future__ import annotations

import itertools
import struct
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial, prod
from typing import Dict, List, NamedTuple, Sequence, Tuple

import networkx as nx

from core.exceptions import DomainError, StructuralError

Vertex = Tuple[int, int]
Edge = Tuple[int, int]
CanonicalKey = bytes


def _sorted_pair(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class StableGraph:
    """
    稳定图（不要求连通，连通性由 is_connected 单独判断）
    边的多重集在构造时排序，边的标识符即排序后的下标
    """

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if not self.vertices:
            raise StructuralError("顶点集合不能为空")
        vertices = []
        for item in self.vertices:
            try:
                genus, ext = (int(x) for x in item)
            except (TypeError, ValueError) as e:
                raise StructuralError(f"顶点格式错误：{item!r}，应为 (genus, ext)") from e
            if genus < 0 or ext < 0:
                raise StructuralError(f"顶点亏格和外腿数必须非负：{item!r}")
            vertices.append((genus, ext))
        size = len(vertices)
        edges = []
        for item in self.edges:
            try:
                u, v = (int(x) for x in item)
            except (TypeError, ValueError) as e:
                raise StructuralError(f"边格式错误：{item!r}，应为 [u, v]") from e
            if not (0 <= u < size and 0 <= v < size):
                raise StructuralError(f"边端点越界：{item!r}，顶点数{size}")
            edges.append(_sorted_pair(u, v))
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        """外腿总数"""
        return sum(ext for _, ext in self.vertices)

    @property
    def half_edges(self) -> int:
        return self.n + 2 * self.num_edges

    @cached_property
    def loops(self) -> Tuple[int, ...]:
        """每个顶点上的自环数"""
        counts = [0] * self.num_vertices
        for u, v in self.edges:
            if u == v:
                counts[u] += 1
        return tuple(counts)

    @cached_property
    def valences(self) -> Tuple[int, ...]:
        """val_v = ext_v + 非自环边端点数 + 2 * 自环数"""
        counts = [ext for _, ext in self.vertices]
        for u, v in self.edges:
            counts[u] += 1
            counts[v] += 1
        return tuple(counts)

    @cached_property
    def multiplicities(self) -> Dict[Edge, int]:
        """非自环边 {u,v} 的重数"""
        return dict(Counter(edge for edge in self.edges if edge[0] != edge[1]))


class CanonicalForm(NamedTuple):
    key: CanonicalKey
    graph: StableGraph
    vertex_automorphisms: int


# ------------------------------ 基本谓词 ------------------------------
def stable_vertex(g: int, n: int) -> StableGraph:
    """Ver_{g,n}：亏格g、带n条外腿的单顶点图"""
    return StableGraph(((g, n),))


def vertex_is_stable(genus: int, valence: int) -> bool:
    return 2 * genus - 2 + valence > 0


def is_stable(graph: StableGraph) -> bool:
    """每个顶点满足 2g_v - 2 + val_v > 0"""
    return all(
        vertex_is_stable(genus, valence)
        for (genus, _), valence in zip(graph.vertices, graph.valences)
    )


def to_networkx(graph: StableGraph) -> nx.MultiGraph:
    multigraph = nx.MultiGraph()
    for index, (genus, ext) in enumerate(graph.vertices):
        multigraph.add_node(index, genus=genus, ext=ext)
    multigraph.add_edges_from(graph.edges)
    return multigraph


def is_connected(graph: StableGraph) -> bool:
    return nx.is_connected(to_networkx(graph))


def connected_components(graph: StableGraph) -> List[StableGraph]:
    """按最小顶点下标排序的连通分支（顶点重新编号）"""
    components = sorted(sorted(nodes) for nodes in nx.connected_components(to_networkx(graph)))
    result = []
    for nodes in components:
        index = {old: new for new, old in enumerate(nodes)}
        vertices = tuple(graph.vertices[old] for old in nodes)
        edges = tuple((index[u], index[v]) for u, v in graph.edges if u in index)
        result.append(StableGraph(vertices, edges))
    return result


def genus(graph: StableGraph) -> int:
    """
    连通图：h^1 + Σ g_v，其中 h^1 = |E| - |V| + 1
    k 个连通分支：Σ genus(Γ_i) - k + 1
    """
    components = connected_components(graph)
    total = sum(
        component.num_edges - component.num_vertices + 1 + sum(g for g, _ in component.vertices)
        for component in components
    )
    return total - len(components) + 1


# ------------------------------ 规范形式 ------------------------------
def _ranks(signatures: Sequence) -> List[int]:
    order = {signature: rank for rank, signature in enumerate(sorted(set(signatures)))}
    return [order[signature] for signature in signatures]


def refine_colors(labels: Sequence[tuple], edges: Sequence[Edge]) -> List[int]:
    """
    颜色细化：初始颜色为 (顶点标签, 自环数, 度)，
    之后每轮按 (当前颜色, 邻居(颜色, 重数)多重集) 重新排名，直到划分稳定
    """
    size = len(labels)
    loops = [0] * size
    adjacency = [Counter() for _ in range(size)]
    for u, v in edges:
        if u == v:
            loops[u] += 1
        else:
            adjacency[u][v] += 1
            adjacency[v][u] += 1
    colors = _ranks([
        (tuple(labels[v]), loops[v], sum(adjacency[v].values())) for v in range(size)
    ])
    while True:
        refined = _ranks([
            (colors[v], tuple(sorted((colors[u], m) for u, m in adjacency[v].items())))
            for v in range(size)
        ])
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def refine_and_branch(labels: Sequence[tuple], edges: Sequence[Edge]) -> Tuple[Tuple[int, ...], Tuple[Edge, ...], int]:
    """
    在颜色细化得到的各类内穷举排列，取字典序最小的边序列
    :param labels: 顶点标签（同一颜色类内标签必相同）
    :param edges: 边列表
    :return: (新顺序下的旧顶点下标, 规范边序列, 达到最小值的排列个数)
             最后一项即保持标签、自环数与边重数的顶点置换群的阶
    """
    colors = refine_colors(labels, edges)
    cells = [
        [v for v in range(len(labels)) if colors[v] == color]
        for color in sorted(set(colors))
    ]
    best_order, best_edges, count = None, None, 0
    for choice in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        order = tuple(itertools.chain.from_iterable(choice))
        position = {old: new for new, old in enumerate(order)}
        serial = tuple(sorted(_sorted_pair(position[u], position[v]) for u, v in edges))
        if best_edges is None or serial < best_edges:
            best_order, best_edges, count = order, serial, 1
        elif serial == best_edges:
            count += 1
    return best_order, best_edges, count


def encode_key(rows: Sequence[Sequence[int]], edges: Sequence[Edge]) -> CanonicalKey:
    """头部 |V|,|E|，随后每个顶点的整数行与每条边，均为2字节大端无符号整数"""
    ints = [len(rows), len(edges)]
    for row in rows:
        ints.extend(row)
    for u, v in edges:
        ints.extend((u, v))
    try:
        return struct.pack(f">{len(ints)}H", *ints)
    except struct.error as e:
        raise StructuralError(f"规范键编码失败（数值超出2字节范围）：{ints}") from e


@lru_cache(maxsize=65536)
def canonical_form(graph: StableGraph) -> CanonicalForm:
    order, edges, vertex_automorphisms = refine_and_branch(graph.vertices, graph.edges)
    vertices = tuple(graph.vertices[old] for old in order)
    return CanonicalForm(encode_key(vertices, edges), StableGraph(vertices, edges), vertex_automorphisms)


def canonical_key(graph: StableGraph) -> CanonicalKey:
    return canonical_form(graph).key


def is_isomorphic(a: StableGraph, b: StableGraph) -> bool:
    return canonical_key(a) == canonical_key(b)


# ------------------------------ 自同构群阶 ------------------------------
def half_edge_lift_count(graph: StableGraph, include_ext: bool = True) -> int:
    """
    固定顶点置换后，半边双射的提升个数：
    Π mult(u,v)! · Π 2^{ℓ_v} ℓ_v! · Π ext_v!（带标号外腿时不含最后一项）
    """
    result = prod(factorial(m) for m in graph.multiplicities.values())
    result *= prod(2 ** loops * factorial(loops) for loops in graph.loops)
    if include_ext:
        result *= prod(factorial(ext) for _, ext in graph.vertices)
    return result


def aut_order(graph: StableGraph) -> int:
    """|Aut(Γ)| = |Aut_vert| · 半边提升个数（外腿可置换）"""
    if not is_connected(graph):
        raise DomainError("自同构群阶只对连通图定义")
    return canonical_form(graph).vertex_automorphisms * half_edge_lift_count(graph)


# ------------------------------ 展示与序列化 ------------------------------
def signature(graph: StableGraph) -> str:
    """可读签名：g=[亏格列表] E=[边列表] ext=[外腿列表]"""
    genera = ",".join(str(g) for g, _ in graph.vertices)
    edges = ",".join(f"({u},{v})" for u, v in graph.edges)
    exts = ",".join(str(ext) for _, ext in graph.vertices)
    return f"g=[{genera}] E=[{edges}] ext=[{exts}]"


def graph_to_dict(graph: StableGraph) -> dict:
    return {
        "vertices": [{"genus": g, "ext": ext} for g, ext in graph.vertices],
        "edges": [[u, v] for u, v in graph.edges],
    }


def graph_from_dict(data: dict) -> StableGraph:
    """
    从图JSON对象构造：{"vertices":[{"genus":int,"ext":int},...],"edges":[[u,v],...]}
    顶点也接受 [genus, ext] 简写
    """
    if not isinstance(data, dict) or "vertices" not in data:
        raise StructuralError(f"图JSON缺少vertices字段：{data!r}")
    vertices = []
    for item in data["vertices"]:
        if isinstance(item, dict):
            try:
                vertices.append((item["genus"], item["ext"]))
            except KeyError as e:
                raise StructuralError(f"顶点缺少字段{e}：{item!r}") from e
        else:
            vertices.append(tuple(item))
    return StableGraph(tuple(vertices), tuple(tuple(edge) for edge in data.get("edges", [])))
