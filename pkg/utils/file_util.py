# -*- coding:utf-8 -*-
"""
文件操作工具类：（JSON/YAML/普通文本，原子写入）
"""
import hashlib
import json
import os
import tempfile
from typing import Any, Dict, List, Union

import yaml

from core.logger import log


class FileUtil:
    """文件操作工具类"""

    @staticmethod
    def read_text(file_path: str, encoding: str = "utf-8") -> str:
        """读取文本文件；文件不存在或不可读时抛出 OSError（由调用方决定退出码）"""
        try:
            with open(file_path, "r", encoding=encoding) as f:
                return f.read()
        except OSError as e:
            log.error(f"读取文件失败：{file_path}，错误：{e}")
            raise

    @staticmethod
    def write_text(file_path: str, content: str, encoding: str = "utf-8") -> None:
        """
        原子写入文本文件（先写同目录临时文件，再替换目标文件）
        :param file_path: 文件路径
        :param content: 写入内容
        :param encoding: 编码格式
        """
        dir_path = os.path.dirname(os.path.abspath(file_path))
        os.makedirs(dir_path, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=dir_path)
        try:
            with os.fdopen(fd, "w", encoding=encoding, newline="") as f:
                f.write(content)
            os.replace(tmp_path, file_path)
            log.debug(f"成功写入文本文件：{file_path}")
        except Exception as e:
            log.error(f"写入文本文件失败：{file_path}，错误：{str(e)}")
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise

    @classmethod
    def read_json(cls, file_path: str) -> Union[Dict, List]:
        """
        读取JSON文件
        :param file_path: 文件路径
        :return: 解析后的字典/列表；内容不是合法JSON时抛出 json.JSONDecodeError（ValueError子类）
        """
        text = cls.read_text(file_path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            log.error(f"JSON解析失败：{file_path}，第{e.lineno}行：{e.msg}")
            raise

    @classmethod
    def write_json(cls, file_path: str, data: Any, indent: int = 2) -> None:
        """
        原子写入JSON文件（键顺序保持，保证输出可复现）
        :param file_path: 文件路径
        :param data: 要写入的字典/列表数据
        :param indent: 缩进
        """
        cls.write_text(file_path, json.dumps(data, indent=indent, ensure_ascii=False) + "\n")

    @classmethod
    def read_yaml(cls, file_path: str) -> Union[Dict, List]:
        """读取YAML文件（配置、黄金用例数据）"""
        text = cls.read_text(file_path)
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            log.error(f"Yaml解析失败：{file_path}，错误：{e}")
            raise

    @staticmethod
    def sha256(file_path: str) -> str:
        """文件内容的SHA-256十六进制摘要"""
        digest = hashlib.sha256()
        with open(file_path, "rb") as f:
            for chunk in iter(lambda: f.read(65536), b""):
                digest.update(chunk)
        return digest.hexdigest()


# 实例化（业务代码可直接导入使用，无需重复创建对象）
file_util = FileUtil()
