# -*- coding:utf-8 -*-
"""全局配置加载（config.yaml + .env 环境变量）"""
import os
import sys
from pathlib import Path

import yaml
from dotenv import load_dotenv

from core.exceptions import ConfigLoadError

PROJECT_ROOT = Path(__file__).absolute().parent.parent
CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"

# 环境变量名
CACHE_DIR_ENV = "SGM_CACHE_DIR"

# .env 中的值不覆盖已存在的环境变量
load_dotenv(PROJECT_ROOT / ".env", override=False)


def load_config(path: Path = CONFIG_PATH) -> dict:
    """
    读取YAML配置文件
    :param path: 配置文件路径
    :return: 配置字典
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigLoadError(f"{path}，错误：{e}") from e
    if not isinstance(data, dict):
        raise ConfigLoadError(f"{path} 顶层必须是字典")
    return data


_config = load_config()
framework_config: dict = _config.get("framework", {})
check_config: dict = _config.get("check", {})

TOOL_NAME = str(framework_config.get("name", "stable-graph-mobius"))
TOOL_VERSION = str(framework_config.get("version", "0.0.0"))


def default_cache_dir() -> Path:
    """平台约定的用户级缓存目录"""
    if sys.platform.startswith("win"):
        base = Path(os.getenv("LOCALAPPDATA") or Path.home() / "AppData" / "Local")
    elif sys.platform == "darwin":
        base = Path.home() / "Library" / "Caches"
    else:
        base = Path(os.getenv("XDG_CACHE_HOME") or Path.home() / ".cache")
    return base / TOOL_NAME


def get_cache_dir() -> Path:
    """
    缓存目录（优先级：环境变量SGM_CACHE_DIR > 配置文件framework.cache_dir > 用户缓存目录）
    :return: 缓存目录绝对路径
    """
    env_dir = os.getenv(CACHE_DIR_ENV)
    if env_dir:
        return Path(env_dir).expanduser().absolute()
    configured = framework_config.get("cache_dir")
    if configured:
        path = Path(configured).expanduser()
        return path if path.is_absolute() else (PROJECT_ROOT / path).absolute()
    return default_cache_dir()
