# -*- coding:utf-8 -*-
"""
时间工具类（耗时统计、时长格式化）
"""
import time

from core.logger import log


class TimeUtil:
    """时间工具类"""

    @staticmethod
    def format_duration(seconds: float) -> str:
        """
        格式化时长（秒转易读格式，不足1秒时精确到毫秒）
        :param seconds: 时长（秒）
        :return: 格式化后的时长（如：1分5秒、350毫秒）
        """
        if seconds < 0:
            raise ValueError(f"时长不能为负数：{seconds}")
        if seconds < 1:
            return f"{int(round(seconds * 1000))}毫秒"
        hours = int(seconds // 3600)
        minutes = int((seconds % 3600) // 60)
        secs = int(seconds % 60)
        result = []
        if hours > 0:
            result.append(f"{hours}小时")
        if minutes > 0:
            result.append(f"{minutes}分")
        if secs > 0 or not result:
            result.append(f"{secs}秒")
        return "".join(result)


class Stopwatch:
    """耗时统计上下文管理器，退出时记录一条INFO日志"""

    def __init__(self, title: str):
        self.title = title
        self.elapsed = 0.0
        self._start = 0.0

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self._start
        log.info(f"⏱ {self.title}耗时：{TimeUtil.format_duration(self.elapsed)}")
        return False
