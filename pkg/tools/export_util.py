# -*- coding:utf-8 -*-
"""
导出工具：图目录表格/JSON/DOT、偏序Hasse图（文本与DOT）、形式和JSON
所有输出只依赖目录顺序，相同输入得到逐字节相同的文本
"""
import json
from typing import Any, List

import pandas as pd

from core.enumeration import FormalSum, GraphCatalog
from core.graph import graph_to_dict, signature
from core.poset import ContractionPoset

KEY_PREFIX_LENGTH = 16


def key_prefix(key: bytes) -> str:
    return key.hex()[:KEY_PREFIX_LENGTH]


def to_json_text(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


# ------------------------------ 图目录 ------------------------------
def catalog_frame(graph_catalog: GraphCatalog) -> pd.DataFrame:
    """每个图一行：下标、规范键前缀、|E|、|Aut|、签名"""
    rows = [
        [i, key_prefix(key), graph.num_edges, aut, signature(graph)]
        for i, (graph, key, aut) in enumerate(zip(graph_catalog.graphs, graph_catalog.keys, graph_catalog.aut_orders))
    ]
    return pd.DataFrame(rows, columns=["index", "key", "|E|", "|Aut|", "signature"])


def catalog_table(graph_catalog: GraphCatalog) -> str:
    return catalog_frame(graph_catalog).to_string(index=False) + "\n"


def catalog_records(graph_catalog: GraphCatalog) -> List[dict]:
    return [
        {
            "index": i,
            "key": key.hex(),
            "signature": signature(graph),
            "edges": graph.num_edges,
            "aut": aut,
            "graph": graph_to_dict(graph),
        }
        for i, (graph, key, aut) in enumerate(zip(graph_catalog.graphs, graph_catalog.keys, graph_catalog.aut_orders))
    ]


def catalog_dot(graph_catalog: GraphCatalog) -> str:
    """每个图一个 cluster，顶点标注亏格与外腿数，内边不带方向"""
    g, n = graph_catalog.pair
    lines = [f'digraph "G_{g}_{n}" {{', "  node [shape=circle];"]
    for i, graph in enumerate(graph_catalog.graphs):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="{i}: |Aut|={graph_catalog.aut_orders[i]}";')
        for v, (vertex_genus, ext) in enumerate(graph.vertices):
            lines.append(f'    g{i}v{v} [label="g={vertex_genus}\\next={ext}"];')
        for u, w in graph.edges:
            lines.append(f"    g{i}v{u} -> g{i}v{w} [dir=none];")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------ 偏序 ------------------------------
def hasse_lines(poset: ContractionPoset) -> List[str]:
    """先列出元素（下标、|E|、规范键前缀、签名），再按 上 -> 下 列出覆盖关系"""
    graph_catalog = poset.catalog
    lines = [f"G^c_{graph_catalog.pair}: {poset.size} elements, {len(poset.covers)} covers"]
    for i, graph in enumerate(graph_catalog.graphs):
        lines.append(f"[{i}] |E|={graph.num_edges} {key_prefix(graph_catalog.keys[i])} {signature(graph)}")
    for lower, upper in sorted(poset.covers, key=lambda c: (c[1], c[0])):
        lines.append(f"[{upper}] -> [{lower}]")
    return lines


def poset_dot(poset: ContractionPoset) -> str:
    """覆盖关系的DOT图：箭头从较大（收缩更多）的图指向较小的图"""
    graph_catalog = poset.catalog
    g, n = graph_catalog.pair
    lines = [f'digraph "poset_{g}_{n}" {{', "  rankdir=TB;", "  node [shape=box];"]
    for i, graph in enumerate(graph_catalog.graphs):
        label = _dot_escape(f"{key_prefix(graph_catalog.keys[i])}\n{signature(graph)}").replace("\n", "\\n")
        lines.append(f'  n{i} [label="{label}"];')
    for lower, upper in sorted(poset.covers, key=lambda c: (c[1], c[0])):
        lines.append(f"  n{upper} -> n{lower};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------ 形式和 ------------------------------
def formal_sum_records(formal_sum: FormalSum) -> dict:
    """在 FormalSum.to_dict 的基础上给每一项附上签名，便于阅读"""
    data = formal_sum.to_dict()
    graph_catalog = formal_sum.catalog
    for term, i in zip(data["terms"], formal_sum.coeffs):
        term["signature"] = signature(graph_catalog[i])
    return data
