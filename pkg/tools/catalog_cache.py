# -*- coding:utf-8 -*-
"""
图目录磁盘缓存
目录结构：<cache_dir>/index.json + 每个 (g,n) 一个 catalog_<g>_<n>.json
索引项记录文件内容的SHA-256与写入时的工具版本，任一不符即视为失效并重新枚举
"""
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from config.config import TOOL_VERSION, get_cache_dir
from core.enumeration import GraphCatalog, catalog, register_catalog, stable_pairs
from core.exception_handler import CacheIOError
from core.exceptions import DomainError, StructuralError
from core.logger import log
from utils.common_util import format_pair, parse_pair
from utils.file_util import file_util

Pair = Tuple[int, int]

INDEX_FILE = "index.json"


@dataclass(frozen=True)
class CacheEntry:
    """缓存索引项"""

    g: int
    n: int
    path: str
    sha256: str
    version: str

    @property
    def pair(self) -> Pair:
        return self.g, self.n

    def is_valid(self, cache_dir: Path, version: str = TOOL_VERSION) -> bool:
        """版本一致、文件存在且内容哈希一致"""
        file_path = cache_dir / self.path
        if self.version != version or not file_path.is_file():
            return False
        return file_util.sha256(str(file_path)) == self.sha256


class CatalogCache:
    """按 (g,n) 缓存 GraphCatalog；所有写入均为原子写入（临时文件 + 替换）"""

    def __init__(self, cache_dir: Optional[Path] = None, version: str = TOOL_VERSION):
        """
        :param cache_dir: 缓存目录（None=config.get_cache_dir()）
        :param version: 工具版本，版本不一致的缓存项会被忽略
        """
        self.cache_dir = Path(cache_dir) if cache_dir else get_cache_dir()
        self.version = version
        self.index_path = self.cache_dir / INDEX_FILE

    # ------------------------------ 索引 ------------------------------
    def _read_index(self) -> Dict[Pair, CacheEntry]:
        if not self.index_path.is_file():
            return {}
        try:
            data = file_util.read_json(str(self.index_path))
            return {
                parse_pair(key): CacheEntry(**item)
                for key, item in data.get("entries", {}).items()
            }
        except OSError as e:
            raise CacheIOError(f"读取缓存索引失败：{self.index_path}，{e}") from e
        except (ValueError, TypeError, AttributeError, DomainError) as e:
            # 索引损坏时丢弃全部条目，目录文件会在下次访问时重建
            log.warning(f"❌ 缓存索引损坏，已忽略：{self.index_path}，{e}")
            return {}

    def _write_index(self, entries: Dict[Pair, CacheEntry]):
        data = {
            "version": self.version,
            "entries": {format_pair(pair): asdict(entry) for pair, entry in sorted(entries.items())},
        }
        try:
            file_util.write_json(str(self.index_path), data)
        except OSError as e:
            raise CacheIOError(f"写入缓存索引失败：{self.index_path}，{e}") from e

    def entries(self) -> List[CacheEntry]:
        return [entry for _, entry in sorted(self._read_index().items())]

    # ------------------------------ 读写单个目录 ------------------------------
    def load(self, g: int, n: int) -> Optional[GraphCatalog]:
        """
        读取 (g,n) 的缓存目录
        :return: GraphCatalog；不存在或已失效时返回 None
        """
        entry = self._read_index().get((g, n))
        if entry is None:
            return None
        if not entry.is_valid(self.cache_dir, self.version):
            log.info(f"📌 缓存项失效（版本或哈希不符），将重新枚举：{format_pair((g, n))}")
            return None
        try:
            loaded = GraphCatalog.from_dict(file_util.read_json(str(self.cache_dir / entry.path)))
        except OSError as e:
            raise CacheIOError(f"读取缓存文件失败：{entry.path}，{e}") from e
        except (StructuralError, ValueError) as e:
            log.warning(f"❌ 缓存文件内容无效，将重新枚举：{entry.path}，{e}")
            return None
        if loaded.pair != (g, n):
            log.warning(f"❌ 缓存文件 {entry.path} 中的 (g,n) 为 {format_pair(loaded.pair)}，已忽略")
            return None
        log.debug(f"命中缓存：G^c_{format_pair((g, n))}")
        return loaded

    def store(self, graph_catalog: GraphCatalog) -> CacheEntry:
        g, n = graph_catalog.pair
        file_name = f"catalog_{g}_{n}.json"
        file_path = self.cache_dir / file_name
        try:
            file_util.write_json(str(file_path), graph_catalog.to_dict())
            digest = file_util.sha256(str(file_path))
        except OSError as e:
            raise CacheIOError(f"写入缓存文件失败：{file_path}，{e}") from e
        entry = CacheEntry(g, n, file_name, digest, self.version)
        entries = self._read_index()
        entries[(g, n)] = entry
        self._write_index(entries)
        log.debug(f"已写入缓存：G^c_{format_pair((g, n))} -> {file_path}")
        return entry

    def get_catalog(self, g: int, n: int) -> GraphCatalog:
        """缓存命中则注入进程内目录表；否则枚举并写回缓存"""
        loaded = self.load(g, n)
        if loaded is not None:
            return register_catalog(loaded)
        graph_catalog = catalog(g, n)
        self.store(graph_catalog)
        return graph_catalog

    def prime(self, pairs: Iterable[Pair]) -> List[GraphCatalog]:
        """预先加载（或枚举并写入）一组 (g,n)"""
        return [self.get_catalog(g, n) for g, n in pairs]

    # ------------------------------ cache 子命令 ------------------------------
    def warm(self, max_chi: int) -> List[CacheEntry]:
        """填充全部 2g-2+n <= max_chi 的目录"""
        log.info(f"📌 预热缓存：2g-2+n<={max_chi}，目录：{self.cache_dir}")
        self.prime(stable_pairs(max_chi))
        return self.entries()

    def info(self) -> List[dict]:
        rows = []
        for entry in self.entries():
            rows.append({
                "g": entry.g,
                "n": entry.n,
                "path": entry.path,
                "sha256": entry.sha256[:12],
                "version": entry.version,
                "valid": entry.is_valid(self.cache_dir, self.version),
            })
        return rows

    def clear(self) -> int:
        """删除索引中记录的全部目录文件与索引本身，返回删除的目录个数"""
        entries = self._read_index()
        try:
            for entry in entries.values():
                file_path = self.cache_dir / entry.path
                if file_path.is_file():
                    os.remove(file_path)
            if self.index_path.is_file():
                os.remove(self.index_path)
        except OSError as e:
            raise CacheIOError(f"清理缓存失败：{self.cache_dir}，{e}") from e
        log.info(f"✅ 已清理缓存：{len(entries)}个目录")
        return len(entries)
