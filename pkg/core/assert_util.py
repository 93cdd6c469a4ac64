# -*- coding:utf-8 -*-
from dataclasses import dataclass, field
from typing import List

import numpy as np

from core.exception_handler import CheckFailedError
from core.logger import log
from utils.common_util import identity_matrix, matrices_equal


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    """校验报告：按名称记录每一项恒等式的通过/失败情况"""

    title: str
    results: List[CheckResult] = field(default_factory=list)

    def record(self, name: str, passed: bool, detail: str = "") -> bool:
        self.results.append(CheckResult(name, bool(passed), detail))
        if passed:
            log.debug(f"✅ {self.title}｜{name}")
        else:
            log.warning(f"❌ {self.title}｜{name}：{detail}")
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        passed = len(self.results) - len(self.failures)
        return f"{self.title}：{passed}/{len(self.results)} 项通过"

    def raise_for_failures(self):
        if not self.ok:
            names = "、".join(result.name for result in self.failures)
            raise CheckFailedError(f"{self.title}：{names}")

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "results": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results
            ],
        }


class AssertUtil:
    """断言工具类（精确相等断言，失败抛出 CheckFailedError）"""

    # ------------------------------ 基础断言 ------------------------------
    @staticmethod
    def assert_equal(actual, expected, msg: str = ""):
        """
        断言两个值精确相等（有理数、多项式、形式和均适用）
        :param actual: 实际值
        :param expected: 预期值
        :param msg: 断言描述
        """
        if actual != expected:
            raise CheckFailedError(f"{msg}，预期{expected}，实际{actual}")
        log.debug(f"✅ 相等断言成功：{msg}")

    # ------------------------------ 矩阵断言 ------------------------------
    @staticmethod
    def assert_matrix_equal(actual: np.ndarray, expected: np.ndarray, msg: str = ""):
        if not matrices_equal(actual, expected):
            raise CheckFailedError(f"矩阵不相等：{msg}")
        log.debug(f"✅ 矩阵相等断言成功：{msg}")

    @staticmethod
    def assert_matrix_identity(matrix: np.ndarray, msg: str = ""):
        """断言方阵精确等于单位矩阵"""
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise CheckFailedError(f"不是方阵：{msg}，形状{matrix.shape}")
        if not matrices_equal(matrix, identity_matrix(matrix.shape[0])):
            raise CheckFailedError(f"矩阵不是单位矩阵：{msg}")
        log.debug(f"✅ 单位矩阵断言成功：{msg}")


# 导出断言实例，供外部使用
assert_util = AssertUtil()
