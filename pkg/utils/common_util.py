# -*- coding:utf-8 -*-
"""通用工具类（有理数格式化、(g,n)键解析、精确有理数矩阵）"""
import re
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from core.exceptions import DomainError

_PAIR_PATTERN = re.compile(r"^\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*$")


# ------------------------------ 有理数（"p/q" 文本格式）------------------------------
def format_fraction(value: Union[int, Fraction]) -> str:
    """
    有理数转文本：整数输出"p"，其余输出"p/q"（q>0，既约）
    :param value: 整数或Fraction
    :return: 文本
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: Union[str, int, Fraction]) -> Fraction:
    """
    文本转有理数（支持"p"、"p/q"、"-p/q"）
    :param text: 文本或整数
    :return: Fraction
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise DomainError(f"无法解析为有理数：{text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"无法解析为有理数：{text!r}") from e


# ------------------------------ (g,n) 键 ------------------------------
def parse_pair(text: str) -> Tuple[int, int]:
    """解析"(g,n)"或"g,n"形式的键"""
    match = _PAIR_PATTERN.match(str(text))
    if not match:
        raise DomainError(f"无法解析(g,n)键：{text!r}")
    return int(match.group(1)), int(match.group(2))


def format_pair(pair: Tuple[int, int]) -> str:
    return f"({pair[0]},{pair[1]})"


def chi_grade(g: int, n: int) -> int:
    """2g-2+n"""
    return 2 * g - 2 + n


def sign(k: int) -> int:
    """(-1)^k"""
    return -1 if k % 2 else 1


# ------------------------------ 精确有理数矩阵（numpy object 数组）------------------------------
def zero_matrix(size: int) -> np.ndarray:
    return np.full((size, size), Fraction(0), dtype=object)


def identity_matrix(size: int) -> np.ndarray:
    matrix = zero_matrix(size)
    for i in range(size):
        matrix[i, i] = Fraction(1)
    return matrix


def freeze(matrix: np.ndarray) -> np.ndarray:
    """返回只读副本"""
    frozen = np.array(matrix, dtype=object, copy=True)
    frozen.setflags(write=False)
    return frozen


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.all(a == b))
