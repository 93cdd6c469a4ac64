# -*- coding:utf-8 -*-
"""
稳定图与广义Möbius反演工具的命令行入口
使用方式：python run.py <子命令> [参数]
子命令：enumerate / poset / euler / duality / invert / cache
标准输出只写命令数据，日志写入stderr；退出码 0=通过 1=校验失败 2=参数/定义域错误 3=文件读写错误
"""
import argparse
import sys
from typing import List, Optional

import pandas as pd

from config.config import TOOL_NAME, TOOL_VERSION, check_config, framework_config
from core.assert_util import CheckReport
from core.duality import check_dotted_oracle, check_naming_lemma, duality_map, verify_duality_sum, verify_involution
from core.enumeration import abstract_npoint, catalog, stable_pairs
from core.euler import euler_table, verify_open_closed
from core.exception_handler import exception_catch
from core.exceptions import DomainError, StructuralError
from core.feynman import FeynmanAssignment, forward_values, inverse_values
from core.gaussian import oracle_report, oracle_rows
from core.logger import init_logger, log
from core.poset import build_poset, check_mobius_identities
from tools.catalog_cache import CatalogCache
from tools.export_util import (
    catalog_dot,
    catalog_records,
    catalog_table,
    formal_sum_records,
    hasse_lines,
    poset_dot,
    to_json_text,
)
from utils.common_util import chi_grade, format_fraction, format_pair, parse_fraction
from utils.file_util import file_util
from utils.path_util import resolve_path
from utils.time_util import Stopwatch

# 当前进程使用的磁盘缓存（--no-cache 或配置关闭时为 None）
_cache: Optional[CatalogCache] = None


def emit(text: str):
    """写标准输出（命令数据）"""
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def prepare_catalogs(max_chi: int):
    """经磁盘缓存预加载全部 2g-2+n <= max_chi 的目录，未开启缓存时什么都不做"""
    if _cache is not None and max_chi >= 1:
        _cache.prime(stable_pairs(max_chi))


def require_stable(g: int, n: int):
    if g < 0 or n < 0 or chi_grade(g, n) <= 0:
        raise DomainError(f"(g,n)=({g},{n}) 不满足稳定性条件 2g-2+n>0")


def emit_report(report: CheckReport) -> bool:
    for result in report.results:
        mark = "PASS" if result.passed else "FAIL"
        emit(f"{mark} {report.title} | {result.name}" + (f" | {result.detail}" if not result.passed else ""))
    emit(report.summary())
    if report.ok:
        log.info(f"✅ {report.summary()}")
    else:
        log.error(f"❌ {report.summary()}")
    return report.ok


# ------------------------------ 子命令 ------------------------------
@exception_catch
def cmd_enumerate(args) -> int:
    require_stable(args.g, args.n)
    prepare_catalogs(chi_grade(args.g, args.n))
    graph_catalog = catalog(args.g, args.n)
    if args.abstract:
        emit(to_json_text(formal_sum_records(abstract_npoint(graph_catalog))))
    elif args.format == "json":
        emit(to_json_text(catalog_records(graph_catalog)))
    elif args.format == "dot":
        emit(catalog_dot(graph_catalog))
    else:
        emit(catalog_table(graph_catalog))
    log.info(f"✅ G^c_{format_pair((args.g, args.n))} 共{len(graph_catalog)}个图")
    return 0


@exception_catch
def cmd_poset(args) -> int:
    require_stable(args.g, args.n)
    prepare_catalogs(chi_grade(args.g, args.n))
    poset = build_poset(catalog(args.g, args.n))
    if args.dot:
        emit(poset_dot(poset))
    if args.hasse or not (args.dot or args.check_mobius):
        emit("\n".join(hasse_lines(poset)))
    if args.check_mobius:
        return 0 if emit_report(check_mobius_identities(poset)) else 1
    return 0


@exception_catch
def cmd_euler(args) -> int:
    if args.max_chi < 1:
        raise DomainError(f"--max-chi 必须 >= 1：{args.max_chi}")
    prepare_catalogs(args.max_chi)
    table = euler_table(args.max_chi)
    csv_text = table.to_csv()
    emit(csv_text)
    if args.out:
        out_path = resolve_path(args.out)
        if out_path.endswith(".json"):
            file_util.write_json(out_path, table.to_dict())
        else:
            file_util.write_text(out_path, csv_text)
        log.info(f"✅ Euler示性数表已写入：{out_path}")
    if args.roundtrip:
        # 逐项报告只写日志，标准输出保持为CSV
        report = verify_open_closed(args.max_chi)
        for result in report.failures:
            log.error(f"❌ {report.title} | {result.name} | {result.detail}")
        log.info(f"{'✅' if report.ok else '❌'} {report.summary()}")
        return 0 if report.ok else 1
    return 0


@exception_catch
def cmd_duality(args) -> int:
    require_stable(args.g, args.n)
    prepare_catalogs(chi_grade(args.g, args.n))
    graph_catalog = catalog(args.g, args.n)
    if args.json:
        emit(to_json_text([formal_sum_records(duality_map(graph_catalog, i)) for i in range(len(graph_catalog))]))
    run_all = not (args.check_involution or args.check_sum or args.oracle or args.json)
    reports = []
    if args.check_involution or run_all:
        reports.append(verify_involution(graph_catalog))
    if args.check_sum or run_all:
        reports.append(verify_duality_sum(graph_catalog))
    if args.oracle:
        reports.append(check_naming_lemma(graph_catalog))
        reports.append(check_dotted_oracle(graph_catalog))
    ok = True
    for report in reports:
        ok = emit_report(report) and ok
    return 0 if ok else 1


def load_assignment(path: str, kappa: str) -> FeynmanAssignment:
    """读取 invert 的输入文件；文件不存在按文件读写错误处理（退出码3）"""
    try:
        data = file_util.read_json(resolve_path(path))
    except ValueError as e:
        raise StructuralError(f"输入文件不是合法JSON：{path}，{e}") from e
    return FeynmanAssignment.from_json(data, parse_fraction(kappa))


@exception_catch
def cmd_invert(args) -> int:
    assignment = load_assignment(args.input, args.kappa)
    max_chi = args.max_chi if args.max_chi is not None else assignment.max_chi
    if max_chi < 1:
        raise DomainError(f"输入中没有 2g-2+n>=1 的 (g,n)：{args.input}")
    prepare_catalogs(max_chi)
    forward = forward_values(assignment, max_chi)
    recovered = inverse_values(FeynmanAssignment(forward, assignment.kappa), max_chi)
    rows = [
        {
            "g": g,
            "n": n,
            "F": format_fraction(assignment.value(g, n)),
            "F_tilde": format_fraction(tilde),
            "F_recovered": format_fraction(recovered[(g, n)]),
        }
        for (g, n), tilde in forward.items()
    ]
    roundtrip = CheckReport(f"F->F̃->F 往返 D={max_chi}")
    for (g, n), value in recovered.items():
        roundtrip.record(format_pair((g, n)), value == assignment.value(g, n), f"还原{format_fraction(value)}")
    checks = [roundtrip]
    oracle = None
    if args.gaussian:
        oracle = oracle_rows(assignment, max_chi)
        checks.append(oracle_report(oracle, max_chi))
    if args.report:
        document = {
            "kappa": format_fraction(assignment.kappa),
            "max_chi": max_chi,
            "rows": rows,
            "checks": [report.to_dict() for report in checks],
        }
        if oracle is not None:
            document["gaussian"] = oracle
        emit(to_json_text(document))
    else:
        emit(pd.DataFrame(rows, columns=["g", "n", "F", "F_tilde", "F_recovered"]).to_string(index=False))
    for report in checks:
        report.raise_for_failures()
        log.info(f"✅ {report.summary()}")
    log.info(f"✅ 反演往返通过：κ={format_fraction(assignment.kappa)}，2g-2+n<={max_chi}")
    return 0


@exception_catch
def cmd_cache(args) -> int:
    cache = CatalogCache(args.cache_dir)
    if args.action == "warm":
        entries = cache.warm(args.max_chi)
        emit(f"{len(entries)} catalogs cached in {cache.cache_dir}")
    elif args.action == "info":
        rows = cache.info()
        if rows:
            emit(pd.DataFrame(rows).to_string(index=False))
        else:
            emit(f"cache is empty: {cache.cache_dir}")
    else:
        emit(f"{cache.clear()} catalogs removed from {cache.cache_dir}")
    return 0


# ------------------------------ 参数解析 ------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="稳定图枚举、边收缩偏序上的广义Möbius反演与对偶映射")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    parser.add_argument("--quiet", "-q", action="store_true", help="只输出WARNING及以上日志，不打印版本横幅")
    parser.add_argument("--verbose", "-v", action="store_true", help="输出DEBUG日志")
    parser.add_argument("--no-cache", action="store_true", help="不读写磁盘缓存")
    parser.add_argument("--cache-dir", type=str, default=None, help="缓存目录（覆盖SGM_CACHE_DIR与配置文件）")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="列出 G^c_{g,n}")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=["table", "json", "dot"], default="table")
    p.add_argument("--abstract", action="store_true", help="输出抽象n点函数 F̂_{g,n}（形式和JSON）")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("poset", help="边收缩偏序（Hasse图、DOT、Möbius恒等式）")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--hasse", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--check-mobius", action="store_true")
    p.set_defaults(handler=cmd_poset)

    p = sub.add_parser("euler", help="χ(M_{g,n}) 与 χ(M̄_{g,n}) 表")
    p.add_argument("--max-chi", type=int, default=check_config.get("max_chi_euler", 5))
    p.add_argument("--roundtrip", action="store_true", help="额外校验三角性，并把逐项开闭往返结果写入日志")
    p.add_argument("--out", type=str, default="", help="输出文件（.json 输出JSON，其余输出CSV）")
    p.set_defaults(handler=cmd_euler)

    p = sub.add_parser("duality", help="对偶映射 φ 的校验")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--check-involution", action="store_true")
    p.add_argument("--check-sum", action="store_true")
    p.add_argument("--oracle", action="store_true", help="与带标号粘合的直接展开逐项对照")
    p.add_argument("--json", action="store_true", help="输出每个图的 φ(Γ)")
    p.set_defaults(handler=cmd_duality)

    p = sub.add_parser("invert", help="F -> F̃ -> F 数值往返")
    p.add_argument("--input", required=True, help="JSON：{\"(g,n)\": \"p/q\", ...}")
    p.add_argument("--kappa", type=str, default="1")
    p.add_argument("--max-chi", type=int, default=None, help="默认取输入中最大的 2g-2+n")
    p.add_argument("--gaussian", action="store_true", help="同时用高斯积分计算 F̃ 并对照")
    p.add_argument("--report", action="store_true", help="以JSON输出取值、校验报告与高斯积分对照")
    p.set_defaults(handler=cmd_invert)

    p = sub.add_parser("cache", help="磁盘缓存管理")
    p.add_argument("action", choices=["warm", "info", "clear"])
    p.add_argument("--max-chi", type=int, default=check_config.get("max_chi_oracle", 3))
    p.set_defaults(handler=cmd_cache)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    global _cache
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    init_logger("WARNING" if args.quiet else "DEBUG" if args.verbose else None)
    if not args.quiet:
        log.info("=" * 60)
        log.info(f"📌 {TOOL_NAME} {TOOL_VERSION}｜子命令：{args.command}")
        log.info("=" * 60)

    cache_enabled = framework_config.get("cache_enabled", True) and not args.no_cache
    _cache = CatalogCache(args.cache_dir) if cache_enabled and args.command != "cache" else None
    with Stopwatch(f"子命令{args.command}"):
        code = args.handler(args)
    if code:
        log.error(f"❌ 子命令{args.command}结束，退出码：{code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
