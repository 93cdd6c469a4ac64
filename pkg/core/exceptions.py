# -*- coding:utf-8 -*-
from core.logger import log


# ------------------------------ 自定义异常类型（按场景分类）------------------------------
class StableGraphError(Exception):
    """框架基础异常（所有自定义异常的父类）"""

    # 命令行退出码：0成功，1校验失败，2用法/定义域错误，3读写错误
    exit_code = 2

    def __init__(self, msg: str):
        self.msg = msg
        super().__init__(self.msg)
        log.error(f"【框架异常】{self.msg}")


class ConfigLoadError(StableGraphError):
    """配置文件加载异常（如YAML读取失败、配置格式错误）"""

    exit_code = 3

    def __init__(self, msg: str):
        super().__init__(f"配置加载失败：{msg}")


class StructuralError(StableGraphError):
    """图数据结构异常（如边端点越界、亏格为负、外腿数不匹配）"""

    def __init__(self, msg: str):
        super().__init__(f"图结构错误：{msg}")


class DomainError(StableGraphError):
    """定义域异常（前置条件不满足：如 2g-2+n<=0、非连通图求自同构、奇数下标Bernoulli数）"""

    def __init__(self, msg: str):
        super().__init__(f"定义域错误：{msg}")
