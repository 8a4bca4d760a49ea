"""F_ℓ 上的稠密线性代数（numpy int64，要求 ℓ < 2^31）"""
from __future__ import annotations

from typing import List, Tuple

import numpy as np
from sympy import Matrix
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

from .errors import InvariantViolation

INT64_LIMIT = 2 ** 63 - 1


def check_modulus(ell: int) -> None:
    if not 2 <= ell < 2 ** 31:
        raise InvariantViolation(f"模数 {ell} 超出 int64 安全范围")


def matmul_mod(A: np.ndarray, B: np.ndarray, ell: int) -> np.ndarray:
    """(A @ B) mod ℓ；按内维分块保证累加不溢出"""
    A = np.asarray(A, dtype=np.int64) % ell
    B = np.asarray(B, dtype=np.int64) % ell
    inner = A.shape[1]
    chunk = max(1, INT64_LIMIT // max(1, (ell - 1) ** 2))
    if chunk >= inner:
        return (A @ B) % ell
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for start in range(0, inner, chunk):
        stop = start + chunk
        out = (out + (A[:, start:stop] @ B[start:stop, :]) % ell) % ell
    return out


def rref_mod(A: np.ndarray, ell: int) -> Tuple[np.ndarray, List[int]]:
    """行最简形，返回 (非零行, 主元列)"""
    R = np.array(A, dtype=np.int64) % ell
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, ell)) % ell
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r]) % ell) % ell
        pivots.append(c)
        r += 1
    return R[:r], pivots


def nullspace_mod(A: np.ndarray, ell: int) -> np.ndarray:
    """{x : A x = 0} 的一组基，按行返回"""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, pivots = rref_mod(A, ell)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-R[i, f]) % ell
    return basis


def charpoly_mod(A: np.ndarray, ell: int) -> List[int]:
    """特征多项式系数（高次在前）mod ℓ"""
    coeffs = Matrix(np.asarray(A, dtype=np.int64).tolist()).charpoly().all_coeffs()
    return [int(c) % ell for c in coeffs]


def split_roots_mod(coeffs: List[int], ell: int) -> List[int]:
    """完全分裂多项式的不同根，升序；不分裂时报错"""
    f = gf_from_int_poly(coeffs, ell)
    _, factors = gf_factor(f, ell, ZZ)
    roots = []
    for g, _ in factors:
        if len(g) != 2:
            raise InvariantViolation(f"特征多项式在 F_{ell} 上不分裂: 因子次数 {len(g) - 1}")
        roots.append(int((-g[1]) % ell))
    return sorted(set(roots))
