# -*- coding:utf-8 -*-
import functools

from core.exceptions import DomainError, StableGraphError
from core.logger import log


# ------------------------------ 自定义异常类型（按场景分类）------------------------------


class CheckFailedError(StableGraphError):
    """恒等式校验失败（如 ζ̃*μ̃≠δ、φ²≠Id）"""

    exit_code = 1

    def __init__(self, msg: str):
        super().__init__(f"校验失败：{msg}")


class ConsistencyError(CheckFailedError):
    """内部一致性异常：两条独立计算路径结果不一致"""

    def __init__(self, msg: str):
        super().__init__(f"内部一致性错误：{msg}")


class DualityViolationError(CheckFailedError):
    """开闭对偶失败：反演得到的 χ(M_{g,n}) 与 Harer-Zagier 值不一致"""

    def __init__(self, msg: str):
        super().__init__(f"开闭对偶不成立：{msg}")


class DataNotFoundError(DomainError):
    """输入数据缺失（如 invert 输入文件中缺少所需的 (g,n)）"""

    def __init__(self, msg: str):
        super().__init__(f"数据未找到：{msg}")


class CacheIOError(StableGraphError):
    """缓存或输出文件读写异常"""

    exit_code = 3

    def __init__(self, msg: str):
        super().__init__(f"文件读写异常：{msg}")


# ------------------------------ 全局异常捕获装饰器（用于命令行子命令）------------------------------
def exception_catch(func):
    """
    全局异常捕获装饰器，把子命令中的异常统一转换成退出码
    :param func: 被装饰的子命令函数（正常返回退出码）
    :return: 退出码（框架异常返回其exit_code，文件读写异常返回3）
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except StableGraphError as e:
            # 自定义异常，已在异常类中记录日志
            return e.exit_code
        except OSError as e:
            return CacheIOError(f"{e}，函数：{func.__name__}").exit_code
        except Exception as e:
            # 未知异常，记录详细日志，抛出框架基础异常
            error_msg = f"未知异常：{str(e)}，函数：{func.__name__}"
            log.exception(error_msg)
            raise StableGraphError(error_msg) from e

    return wrapper
