"""分圆整数 Σ m_k ζ_e^k 的精确运算：向量第 k 位是 ζ_e^k 的系数"""
from __future__ import annotations

from functools import lru_cache
from typing import Tuple

import numpy as np
from sympy import Symbol, cyclotomic_poly

_x = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(e: int) -> Tuple[int, ...]:
    """Φ_e 的系数，低次在前"""
    coeffs = cyclotomic_poly(e, _x, polys=True).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """模 x^e - 1 的循环卷积"""
    e = len(a)
    full = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    out = full[:e].copy()
    out[: e - 1] += full[e:]
    return out


def conjugate(a: np.ndarray) -> np.ndarray:
    """复共轭：ζ^k -> ζ^{-k}"""
    return np.roll(np.asarray(a)[::-1], 1)


def reduce(a: np.ndarray, e: int) -> np.ndarray:
    """模 Φ_e 约化，得到长度 φ(e) 的规范系数（Python 整数）"""
    phi = np.array(cyclotomic_coeffs(e), dtype=object)
    d = len(phi) - 1
    r = np.array([int(v) for v in a], dtype=object)
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k]
        if c:
            r[k - d: k + 1] -= c * phi
    return r[:d]


def equals_integer(a: np.ndarray, e: int, n: int) -> bool:
    r = reduce(a, e)
    return int(r[0]) == n and not any(r[1:])


def to_complex(a: np.ndarray) -> complex:
    e = len(a)
    zeta = np.exp(2j * np.pi * np.arange(e) / e)
    return complex(np.dot(np.asarray(a, dtype=float), zeta))
