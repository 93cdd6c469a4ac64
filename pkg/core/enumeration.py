# -*- coding:utf-8 -*-
"""
连通稳定图目录 G^c_{g,n} 的枚举与抽象n点函数 F̂_{g,n}

枚举从 Ver_{g,n} 出发做广度优先“退化”（边收缩的逆操作）：
顶点分裂与插入自环；每一步按规范键去重。
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from core.exceptions import DomainError, StructuralError
from core.graph import (
    CanonicalKey,
    StableGraph,
    aut_order,
    canonical_form,
    canonical_key,
    genus,
    graph_from_dict,
    graph_to_dict,
    is_connected,
    is_stable,
    stable_vertex,
    vertex_is_stable,
)
from core.logger import log
from utils.common_util import chi_grade, format_fraction, parse_fraction

Pair = Tuple[int, int]


# ------------------------------ 图目录 ------------------------------
@dataclass(frozen=True, eq=False)
class GraphCatalog:
    """G^c_{g,n}：按 (|E|, 规范键) 排序的规范代表元，附带规范键索引与 |Aut|"""

    g: int
    n: int
    graphs: Tuple[StableGraph, ...]
    keys: Tuple[CanonicalKey, ...]
    aut_orders: Tuple[int, ...]
    index: Dict[CanonicalKey, int] = field(repr=False)

    @classmethod
    def from_graphs(cls, g: int, n: int, graphs: Iterable[StableGraph]) -> "GraphCatalog":
        """规范化、去重并排序"""
        unique = {}
        for graph in graphs:
            form = canonical_form(graph)
            unique.setdefault(form.key, form.graph)
        ordered = sorted(unique.items(), key=lambda item: (item[1].num_edges, item[0]))
        return cls.from_records(g, n, [graph for _, graph in ordered])

    @classmethod
    def from_records(cls, g: int, n: int, graphs: List[StableGraph], auts: List[int] = None) -> "GraphCatalog":
        """按给定顺序构造（用于磁盘缓存加载），auts 缺省时重新计算"""
        keys = tuple(canonical_key(graph) for graph in graphs)
        if auts is None:
            auts = [aut_order(graph) for graph in graphs]
        if len(auts) != len(graphs):
            raise StructuralError(f"|Aut| 列表长度{len(auts)}与图个数{len(graphs)}不一致")
        index = {key: i for i, key in enumerate(keys)}
        if len(index) != len(keys):
            raise StructuralError(f"图目录({g},{n})中存在同构的重复图")
        return cls(g, n, tuple(graphs), keys, tuple(int(a) for a in auts), index)

    @property
    def pair(self) -> Pair:
        return self.g, self.n

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[StableGraph]:
        return iter(self.graphs)

    def __getitem__(self, i: int) -> StableGraph:
        return self.graphs[i]

    def index_of(self, graph: StableGraph) -> int:
        """图（任意顶点编号）在目录中的下标"""
        try:
            return self.index[canonical_key(graph)]
        except KeyError:
            raise DomainError(f"图不属于 G^c_{{{self.g},{self.n}}}") from None

    @property
    def vertex_index(self) -> int:
        """Ver_{g,n} 的下标（唯一没有内边的成员，排在首位）"""
        return 0

    def num_edges(self, i: int) -> int:
        return self.graphs[i].num_edges

    def to_dict(self) -> dict:
        """缓存文件格式：图JSON数组 + 并行的 |Aut| 十进制字符串数组"""
        return {
            "g": self.g,
            "n": self.n,
            "graphs": [graph_to_dict(graph) for graph in self.graphs],
            "aut": [str(a) for a in self.aut_orders],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GraphCatalog":
        try:
            graphs = [graph_from_dict(item) for item in data["graphs"]]
            auts = [int(a) for a in data["aut"]]
            return cls.from_records(int(data["g"]), int(data["n"]), graphs, auts)
        except (KeyError, TypeError, ValueError) as e:
            raise StructuralError(f"图目录JSON格式错误：{e}") from e


# ------------------------------ 形式和 ------------------------------
Scalar = Union[int, Fraction]


class FormalSum:
    """V^c_{g,n} 中的元素：目录下标 -> 有理系数（系数为0的项不存储）"""

    __slots__ = ("catalog", "coeffs")

    def __init__(self, catalog: GraphCatalog, coeffs: Mapping[int, Scalar] = None):
        self.catalog = catalog
        cleaned = {}
        for i, c in (coeffs or {}).items():
            if not 0 <= i < len(catalog):
                raise DomainError(f"形式和下标越界：{i}")
            c = Fraction(c)
            if c:
                cleaned[i] = c
        self.coeffs: Dict[int, Fraction] = dict(sorted(cleaned.items()))

    @classmethod
    def basis(cls, catalog: GraphCatalog, i: int, coeff: Scalar = 1) -> "FormalSum":
        return cls(catalog, {i: coeff})

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs.get(i, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_same(self, other: "FormalSum"):
        if self.catalog.pair != other.catalog.pair:
            raise DomainError(f"形式和所属目录不同：{self.catalog.pair} vs {other.catalog.pair}")

    def __add__(self, other: "FormalSum") -> "FormalSum":
        self._check_same(other)
        merged = dict(self.coeffs)
        for i, c in other.coeffs.items():
            merged[i] = merged.get(i, 0) + c
        return FormalSum(self.catalog, merged)

    def __neg__(self) -> "FormalSum":
        return FormalSum(self.catalog, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "FormalSum":
        return FormalSum(self.catalog, {i: c * scalar for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.catalog.pair == other.catalog.pair and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.catalog.pair, tuple(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = " + ".join(f"{format_fraction(c)}·Γ{i}" for i, c in self.coeffs.items()) or "0"
        return f"FormalSum({self.catalog.g},{self.catalog.n}: {terms})"

    def to_dict(self) -> dict:
        return {
            "g": self.catalog.g,
            "n": self.catalog.n,
            "terms": [
                {"key": self.catalog.keys[i].hex(), "coeff": format_fraction(c)}
                for i, c in self.coeffs.items()
            ],
        }

    @classmethod
    def from_dict(cls, catalog: GraphCatalog, data: dict) -> "FormalSum":
        if (data.get("g"), data.get("n")) != catalog.pair:
            raise DomainError(f"形式和JSON的(g,n)与目录{catalog.pair}不一致")
        coeffs = {}
        for term in data.get("terms", []):
            try:
                i = catalog.index[bytes.fromhex(term["key"])]
            except (KeyError, ValueError) as e:
                raise StructuralError(f"形式和JSON中的规范键无法识别：{term!r}") from e
            coeffs[i] = parse_fraction(term["coeff"])
        return cls(catalog, coeffs)


# ------------------------------ 枚举 ------------------------------
def _split_vertex(graph: StableGraph, v: int) -> Iterator[StableGraph]:
    """把顶点 v 分裂为 v（保留下标）与新顶点 m，并用一条新边相连"""
    vertex_genus, ext = graph.vertices[v]
    m = graph.num_vertices
    loop_ids = [i for i, (a, b) in enumerate(graph.edges) if a == b == v]
    end_ids = [i for i, (a, b) in enumerate(graph.edges) if (a == v) != (b == v)]
    untouched = [edge for i, edge in enumerate(graph.edges) if v not in edge]
    for g1 in range(vertex_genus + 1):
        for k in range(ext + 1):
            for loop_choice in itertools.product((0, 1, 2), repeat=len(loop_ids)):
                for end_choice in itertools.product((0, 1), repeat=len(end_ids)):
                    edges = list(untouched)
                    # 0：留在v上的自环；1：移到m上的自环；2：变成 v-m 之间的边
                    for choice in loop_choice:
                        edges.append(((v, v), (m, m), (v, m))[choice])
                    for i, choice in zip(end_ids, end_choice):
                        a, b = graph.edges[i]
                        other = b if a == v else a
                        edges.append((v if choice == 0 else m, other))
                    edges.append((v, m))
                    vertices = list(graph.vertices)
                    vertices[v] = (g1, k)
                    vertices.append((vertex_genus - g1, ext - k))
                    child = StableGraph(tuple(vertices), tuple(edges))
                    valences = child.valences
                    if vertex_is_stable(g1, valences[v]) and vertex_is_stable(vertex_genus - g1, valences[m]):
                        yield child


def degenerations(graph: StableGraph) -> Iterator[StableGraph]:
    """单步逆收缩：所有顶点分裂，以及亏格>=1顶点上插入自环"""
    for v, (vertex_genus, ext) in enumerate(graph.vertices):
        yield from _split_vertex(graph, v)
        if vertex_genus >= 1:
            vertices = list(graph.vertices)
            vertices[v] = (vertex_genus - 1, ext)
            yield StableGraph(tuple(vertices), graph.edges + ((v, v),))


def enumerate_catalog(g: int, n: int) -> GraphCatalog:
    """
    枚举 G^c_{g,n}（完整且无重复）
    :param g: 亏格
    :param n: 外腿数
    :return: 按 (|E|, 规范键) 排序的图目录
    """
    if g < 0 or n < 0 or chi_grade(g, n) <= 0:
        raise DomainError(f"(g,n)=({g},{n}) 不满足稳定性条件 2g-2+n>0")
    root = canonical_form(stable_vertex(g, n))
    seen: Dict[CanonicalKey, StableGraph] = {root.key: root.graph}
    frontier = [root.graph]
    while frontier:
        next_frontier = []
        for graph in frontier:
            for child in degenerations(graph):
                form = canonical_form(child)
                if form.key not in seen:
                    seen[form.key] = form.graph
                    next_frontier.append(form.graph)
        frontier = next_frontier
    catalog = GraphCatalog.from_graphs(g, n, seen.values())
    log.debug(f"枚举完成：G^c_{{{g},{n}}} 共{len(catalog)}个图")
    return catalog


# 进程内目录缓存：(g,n) -> GraphCatalog；setdefault 保证并发下 get-or-insert 原子性
_CATALOGS: Dict[Pair, GraphCatalog] = {}


def catalog(g: int, n: int) -> GraphCatalog:
    """带进程内缓存的 enumerate_catalog"""
    cached = _CATALOGS.get((g, n))
    if cached is not None:
        return cached
    return _CATALOGS.setdefault((g, n), enumerate_catalog(g, n))


def register_catalog(graph_catalog: GraphCatalog) -> GraphCatalog:
    """注入外部加载的目录（如磁盘缓存），已存在时返回已有对象"""
    return _CATALOGS.setdefault(graph_catalog.pair, graph_catalog)


# 清空目录表时依次调用，用于释放以目录对象为键的下游缓存
_CLEAR_HOOKS: List[Callable[[], None]] = []


def on_clear_catalogs(func: Callable[[], None]) -> Callable[[], None]:
    """注册清空目录表时的回调（装饰器用法）"""
    _CLEAR_HOOKS.append(func)
    return func


def clear_catalogs():
    _CATALOGS.clear()
    for hook in _CLEAR_HOOKS:
        hook()


def stable_pairs(max_chi: int, min_chi: int = 1) -> List[Pair]:
    """所有满足 min_chi <= 2g-2+n <= max_chi 的 (g,n)，按字典序（先g后n）排列"""
    pairs = []
    for g in range(max_chi // 2 + 2):
        for n in range(max(0, min_chi + 2 - 2 * g), max_chi + 3 - 2 * g):
            if min_chi <= chi_grade(g, n) <= max_chi:
                pairs.append((g, n))
    return pairs


# ------------------------------ 抽象n点函数 ------------------------------
def abstract_npoint(graph_catalog: GraphCatalog) -> FormalSum:
    """F̂_{g,n} = Σ Γ / |Aut(Γ)|"""
    return FormalSum(graph_catalog, {
        i: Fraction(1, aut) for i, aut in enumerate(graph_catalog.aut_orders)
    })


def check_member(graph_catalog: GraphCatalog, graph: StableGraph) -> bool:
    """成员校验：连通、稳定、亏格与外腿数匹配"""
    return (
        is_connected(graph)
        and is_stable(graph)
        and genus(graph) == graph_catalog.g
        and graph.n == graph_catalog.n
    )
