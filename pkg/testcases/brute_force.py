# -*- coding:utf-8 -*-
"""
测试用的独立对照实现：不调用 core.graph 的规范形式与自同构计算
1. 半边双射穷举 |Aut(Γ)|
2. 按顶点标签与边多重集穷举 G^c_{g,n}，用 networkx 同构判定去重
3. 穷举外腿命名方式，按带名字的 networkx 同构去重得到 S_Γ
"""
import itertools
from typing import Iterator, List, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from core.duality import LabeledStableGraph
from core.graph import StableGraph, is_connected, is_stable, to_networkx

_NODE_MATCH = categorical_node_match(["genus", "ext"], [None, None])
_NAMED_NODE_MATCH = categorical_node_match(["genus", "names"], [None, None])


# ------------------------------ 半边穷举自同构 ------------------------------
def _half_edges(graph: StableGraph) -> Tuple[List[int], List[bool], List[int]]:
    """
    :return: (每个半边所在顶点, 是否为外腿, 内边配对 partner；外腿的 partner 为自身)
    """
    owner, is_leg, partner = [], [], []
    for v, (_, ext) in enumerate(graph.vertices):
        for _ in range(ext):
            partner.append(len(owner))
            owner.append(v)
            is_leg.append(True)
    for u, w in graph.edges:
        h = len(owner)
        owner.extend((u, w))
        is_leg.extend((False, False))
        partner.extend((h + 1, h))
    return owner, is_leg, partner


def _candidate_permutations(is_leg: List[bool], fix_legs: bool) -> Iterator[Tuple[int, ...]]:
    """外腿固定时只置换内半边"""
    size = len(is_leg)
    if not fix_legs:
        yield from itertools.permutations(range(size))
        return
    inner = [h for h in range(size) if not is_leg[h]]
    for images in itertools.permutations(inner):
        sigma = list(range(size))
        for h, image in zip(inner, images):
            sigma[h] = image
        yield tuple(sigma)


def brute_force_aut(graph: StableGraph, fix_legs: bool = False) -> int:
    """
    穷举半边置换 σ：σ 诱导良定义的顶点双射且保持亏格，外腿映到外腿，且与内边配对交换
    :param fix_legs: 外腿是否带标号（必须逐条固定）
    """
    owner, is_leg, partner = _half_edges(graph)
    size = len(owner)
    if size == 0:
        return 1
    count = 0
    for sigma in _candidate_permutations(is_leg, fix_legs):
        vertex_map = {}
        ok = True
        for h in range(size):
            image = sigma[h]
            if is_leg[h] != is_leg[image] or (fix_legs and is_leg[h] and image != h):
                ok = False
                break
            if vertex_map.setdefault(owner[h], owner[image]) != owner[image]:
                ok = False
                break
            if not is_leg[h] and sigma[partner[h]] != partner[image]:
                ok = False
                break
        if not ok or len(set(vertex_map.values())) != len(vertex_map):
            continue
        if all(graph.vertices[v][0] == graph.vertices[w][0] for v, w in vertex_map.items()):
            count += 1
    return count


# ------------------------------ networkx 同构 ------------------------------
def nx_isomorphic(a: StableGraph, b: StableGraph) -> bool:
    """多重图同构（比较顶点的亏格与外腿数，自环与平行边按条数比较）"""
    return nx.is_isomorphic(to_networkx(a), to_networkx(b), node_match=_NODE_MATCH)


def _invariant(graph: StableGraph) -> tuple:
    return (
        graph.num_edges,
        tuple(sorted(zip(graph.vertices, graph.valences, graph.loops))),
    )


# ------------------------------ 穷举枚举 ------------------------------
def brute_force_catalog(g: int, n: int) -> List[StableGraph]:
    """
    枚举顶点数 V（<= 2g-2+n）、按非增排列的顶点标签 (g_v, ext_v)、
    以及 E = V - 1 + (g - Σg_v) 条边的多重集，保留连通且稳定者并按同构去重
    """
    chi = 2 * g - 2 + n
    representatives: dict = {}
    for num_vertices in range(1, chi + 1):
        labels = [(gv, ext) for gv in range(g + 1) for ext in range(n + 1)]
        for vertices in itertools.combinations_with_replacement(sorted(labels, reverse=True), num_vertices):
            genus_sum = sum(gv for gv, _ in vertices)
            if genus_sum > g or sum(ext for _, ext in vertices) != n:
                continue
            num_edges = num_vertices - 1 + g - genus_sum
            slots = list(itertools.combinations_with_replacement(range(num_vertices), 2))
            for edges in itertools.combinations_with_replacement(slots, num_edges):
                graph = StableGraph(tuple(vertices), tuple(edges))
                if not is_stable(graph) or not is_connected(graph):
                    continue
                bucket = representatives.setdefault(_invariant(graph), [])
                if not any(nx_isomorphic(graph, other) for other in bucket):
                    bucket.append(graph)
    return [graph for bucket in representatives.values() for graph in bucket]


# ------------------------------ 穷举外腿命名 ------------------------------
def _named_networkx(graph: StableGraph, names: Tuple[Tuple[int, ...], ...]) -> nx.MultiGraph:
    multigraph = nx.MultiGraph()
    for index, ((genus, _), group) in enumerate(zip(graph.vertices, names)):
        multigraph.add_node(index, genus=genus, names=tuple(sorted(group)))
    multigraph.add_edges_from(graph.edges)
    return multigraph


def brute_force_naming_set(graph: StableGraph) -> List[LabeledStableGraph]:
    """
    把名字 0..n-1 的全部 n! 种排列依次填入各顶点的外腿位置，
    再按“顶点亏格 + 外腿名字集合”的多重图同构去重
    """
    slots = [v for v, (_, ext) in enumerate(graph.vertices) for _ in range(ext)]
    distributions = set()
    for perm in itertools.permutations(range(graph.n)):
        groups = [[] for _ in graph.vertices]
        for v, name in zip(slots, perm):
            groups[v].append(name)
        distributions.add(tuple(tuple(sorted(group)) for group in groups))
    representatives: List[Tuple[tuple, nx.MultiGraph]] = []
    for names in sorted(distributions):
        candidate = _named_networkx(graph, names)
        if not any(
            nx.is_isomorphic(candidate, other, node_match=_NAMED_NODE_MATCH) for _, other in representatives
        ):
            representatives.append((names, candidate))
    return [LabeledStableGraph(graph, names) for names, _ in representatives]
