# -*- coding:utf-8 -*-
"""路径工具类（跨平台路径处理，避免硬编码路径问题）"""
import os
from pathlib import Path

from core.exceptions import ConfigLoadError


def get_project_path() -> str:
    """
    获取项目根路径（当前文件的父目录的父目录）
    :return: 项目根路径（绝对路径，字符串格式）
    """
    return str(Path(__file__).absolute().parent.parent)


def get_path(*args) -> str:
    """
    拼接项目内路径
    :param args: 路径片段（如"data", "test_data.yaml"）
    :return: 拼接后的绝对路径（字符串格式）
    """
    try:
        return os.path.normpath(os.path.join(get_project_path(), *args))
    except TypeError as e:
        raise ConfigLoadError(f"路径拼接失败：{str(e)}，路径片段：{args}") from e


def resolve_path(path: str) -> str:
    """相对路径按当前工作目录解析为绝对路径"""
    return os.path.abspath(os.path.expanduser(path))
