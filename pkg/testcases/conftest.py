# -*- coding:utf-8 -*-
import pytest

from config.config import check_config
from core.logger import log
from utils.file_util import file_util
from utils.path_util import get_path
from utils.random_util import RandomUtil

# 黄金数据（从YAML文件读取，模块级加载以便参数化）
GOLDEN = file_util.read_yaml(get_path("data", "test_data.yaml"))


def case_ids(cases: list) -> list:
    """参数化用例ID：直接使用YAML中的case_id"""
    return [case["case_id"] for case in cases]


# ------------------------------ 全局夹具（所有用例可用，自动执行）------------------------------
@pytest.fixture(scope="session", autouse=True)
def init_framework():
    """会话级夹具：打印开始/结束横幅"""
    log.info("=" * 60)
    log.info("✅ 开始执行稳定图与广义Möbius反演校验用例")
    log.info("=" * 60)
    yield
    log.info("=" * 60)
    log.info("✅ 用例执行完成")
    log.info("=" * 60)


# ------------------------------ 数据夹具 ------------------------------
@pytest.fixture(scope="session")
def limits():
    """校验规模上限（config.yaml 的 check 段）"""
    return check_config


@pytest.fixture(scope="function")
def rng():
    """每个用例一个独立的、固定种子的随机工具实例"""
    return RandomUtil()


@pytest.fixture(scope="function")
def cache_dir(tmp_path):
    """临时缓存目录，用例结束后由pytest清理"""
    path = tmp_path / "catalog-cache"
    path.mkdir()
    return path
