from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import List, Tuple

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_strip

from .constants import FIELD_ORDER_CAP
from .errors import GroupDataError

logger = logging.getLogger(__name__)


def prime_power(q: int) -> Tuple[int, int]:
    """q = p^f，返回 (p, f)；不是素数幂时报错"""
    if q < 2:
        raise GroupDataError(f"{q} 不是素数幂")
    factors = factorint(q)
    if len(factors) != 1:
        raise GroupDataError(f"{q} 不是素数幂")
    (p, f), = factors.items()
    return int(p), int(f)


def irreducible_polynomials(p: int, n: int):
    """按系数字典序生成 F_p 上 n 次首一不可约多项式（高次在前）"""
    for tail in itertools.product(range(p), repeat=n):
        f = [1, *tail]
        if gf_irreducible_p(f, p, ZZ):
            yield f


def field_within_cap(p: int, n: int) -> bool:
    """p^n ≤ FIELD_ORDER_CAP；n 过大时不计算 p^n"""
    return n < FIELD_ORDER_CAP.bit_length() and p ** n <= FIELD_ORDER_CAP


class FiniteField:
    """F_{p^n}，元素用 0..q-1 的整数表示（p 进制数字即多项式系数，低次在低位）。

    取模多项式默认为字典序最小的首一不可约多项式；``modulus_rank=1``
    取第二个，用于验证输出与多项式选择无关。
    """

    def __init__(self, p: int, n: int = 1, modulus_rank: int = 0) -> None:
        if not isprime(p) or n < 1:
            raise GroupDataError(f"域参数不合法: p={p}, n={n}")
        if not field_within_cap(p, n):
            raise GroupDataError(f"域 F_{p}^{n} 超过上限 q ≤ {FIELD_ORDER_CAP}")
        self.p = p
        self.n = n
        self.q = p ** n
        polys = irreducible_polynomials(p, n)
        try:
            for _ in range(modulus_rank):
                next(polys)
            self.modulus: List[int] = next(polys)
        except StopIteration:
            raise GroupDataError(f"F_{p}[x] 中没有第 {modulus_rank + 1} 个 {n} 次不可约多项式") from None
        self._digits = [self._to_digits(a) for a in range(self.q)]
        self._add = [[self._from_digits([(x + y) % p for x, y in zip(da, db)]) for db in self._digits]
                     for da in self._digits]
        self._mul = [[self._poly_mul(a, b) for b in range(self.q)] for a in range(self.q)]
        self.primitive_element = self._find_primitive()
        self._exp = [1] * (self.q - 1)
        for k in range(1, self.q - 1):
            self._exp[k] = self._mul[self._exp[k - 1]][self.primitive_element]
        self._log = {x: k for k, x in enumerate(self._exp)}
        logger.debug("F_%d: modulus=%s primitive=%d", self.q, self.modulus, self.primitive_element)

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q}, modulus={self.modulus})"

    # ---- 表示转换 ----
    def _to_digits(self, a: int) -> List[int]:
        digits = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            digits.append(r)
        return digits

    def _from_digits(self, digits) -> int:
        value = 0
        for d in reversed(list(digits)):
            value = value * self.p + d
        return value

    def _to_poly(self, a: int) -> List[int]:
        return gf_strip(list(reversed(self._digits[a])))

    def _poly_mul(self, a: int, b: int) -> int:
        prod = gf_rem(gf_mul(self._to_poly(a), self._to_poly(b), self.p, ZZ), self.modulus, self.p, ZZ)
        digits = list(reversed(prod)) + [0] * (self.n - len(prod))
        return self._from_digits(digits)

    def _find_primitive(self) -> int:
        if self.q == 2:
            return 1
        divisors = [(self.q - 1) // r for r in factorint(self.q - 1)]
        for g in range(2, self.q):
            if all(self.pow(g, d) != 1 for d in divisors):
                return g
        raise GroupDataError(f"F_{self.q} 中找不到本原元")  # pragma: no cover

    # ---- 运算 ----
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._from_digits([(-d) % self.p for d in self._digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self.neg(b)]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 在域中不可逆")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def omega(self, k: int) -> int:
        """本原元的 k 次幂"""
        return self._exp[k % (self.q - 1)]

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** k)

    def basis(self) -> List[int]:
        """多项式基 1, x, ..., x^{n-1}"""
        return [self.p ** i for i in range(self.n)]

    def roots(self, coeffs: List[int]) -> List[int]:
        """多项式（高次在前，系数为域元素）的全部根"""
        out = []
        for x in range(self.q):
            acc = 0
            for c in coeffs:
                acc = self.add(self.mul(acc, x), c)
            if acc == 0:
                out.append(x)
        return out


@lru_cache(maxsize=None)
def finite_field(p: int, n: int = 1, modulus_rank: int = 0) -> FiniteField:
    return FiniteField(p, n, modulus_rank)


@lru_cache(maxsize=None)
def field_of_order(q: int, modulus_rank: int = 0) -> FiniteField:
    p, n = prime_power(q)
    return FiniteField(p, n, modulus_rank)
