# -*- coding:utf-8 -*-
"""
随机工具类（带种子的随机有理数、随机Feynman赋值、随机关联函数）
所有随机数都来自实例自己的 random.Random，保证同一种子可复现
"""
import random
from fractions import Fraction
from typing import List

from config.config import check_config
from core.feynman import FeynmanAssignment
from core.poset import ContractionPoset, IncidenceFunction


class RandomUtil:
    """随机工具类"""

    def __init__(self, seed: int = None,
                 numerator_bound: int = None, denominator_bound: int = None):
        """
        :param seed: 随机种子（默认取配置 check.random_seed）
        :param numerator_bound: 分子取值范围 [-bound, bound]
        :param denominator_bound: 分母取值范围 [1, bound]
        """
        self.seed = check_config.get("random_seed", 0) if seed is None else seed
        self.numerator_bound = numerator_bound or check_config.get("numerator_bound", 9)
        self.denominator_bound = denominator_bound or check_config.get("denominator_bound", 7)
        self.rng = random.Random(self.seed)

    def reseed(self, seed: int = None):
        self.rng.seed(self.seed if seed is None else seed)

    def random_fraction(self, nonzero: bool = False) -> Fraction:
        """
        生成随机有理数 p/q
        :param nonzero: 是否排除0
        :return: Fraction
        """
        while True:
            value = Fraction(
                self.rng.randint(-self.numerator_bound, self.numerator_bound),
                self.rng.randint(1, self.denominator_bound),
            )
            if value or not nonzero:
                return value

    def random_vector(self, size: int) -> List[Fraction]:
        return [self.random_fraction() for _ in range(size)]

    def random_assignment(self, max_chi: int, kappa: Fraction = None) -> FeynmanAssignment:
        """覆盖全部 2g-2+n <= max_chi 的随机 F_{g,n}；kappa 缺省时随机取非零值"""
        kappa = self.random_fraction(nonzero=True) if kappa is None else kappa
        return FeynmanAssignment.from_function(lambda g, n: self.random_fraction(), max_chi, kappa)

    def random_incidence(self, poset: ContractionPoset, name: str = "f") -> IncidenceFunction:
        """支撑在 {(x,y): x<=y} 上的随机关联函数"""
        return IncidenceFunction.from_function(
            poset, lambda i, j: self.random_fraction(), name
        )
