from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np
from sympy import isprime, primitive_root

from . import cyclotomic
from .conjugacy import ClassData, conjugacy_classes
from .constants import LIFTING_PRIME_SEARCH_BOUND
from .errors import InvariantViolation, LiftingPrimeNotFound
from .modular import charpoly_mod, check_modulus, matmul_mod, nullspace_mod, rref_mod, split_roots_mod
from .perm_group import PermGroup
from .permutation import compose, invert

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """精确特征标表。

    ``values[i, c]`` 是长度 e 的整数向量 m，表示 χ_i(g_c) = Σ_k m_k ζ_e^k；
    行按 (次数, 是否非平凡, 值向量) 排序，第 0 行是平凡特征标。
    """

    group_order: int
    exponent: int
    lifting_prime: int
    class_sizes: Tuple[int, ...]
    degrees: Tuple[int, ...]
    values: np.ndarray
    kernels: Tuple[FrozenSet[int], ...]
    codegrees: Tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.degrees)

    def value(self, i: int, c: int) -> np.ndarray:
        return self.values[i, c]

    def kernel_order(self, i: int) -> int:
        return sum(self.class_sizes[c] for c in self.kernels[i])

    def gcd_set(self) -> List[int]:
        """非线性特征标的 gcd(χ(1), cod(χ)) 多重集（升序）"""
        return sorted(gcd(d, c) for d, c in zip(self.degrees, self.codegrees) if d > 1)

    def dump(self) -> str:
        lines = []
        for i, (d, cod) in enumerate(zip(self.degrees, self.codegrees)):
            fields = [str(d), str(cod), ",".join(map(str, sorted(self.kernels[i])))]
            fields.extend(",".join(map(str, self.values[i, c].tolist())) for c in range(len(self.class_sizes)))
            lines.append("\t".join(fields))
        return "\n".join(lines) + "\n"


def lifting_prime(order: int, e: int) -> int:
    """最小的素数 ℓ ≡ 1 (mod e) 且 ℓ > order"""
    k = (order - 1) // e + 1
    for _ in range(LIFTING_PRIME_SEARCH_BOUND):
        candidate = k * e + 1
        if isprime(candidate):
            return candidate
        k += 1
    raise LiftingPrimeNotFound(f"在 {LIFTING_PRIME_SEARCH_BOUND} 次尝试内找不到 ℓ ≡ 1 (mod {e}), ℓ > {order}")


def structure_constants(cd: ClassData) -> np.ndarray:
    """a[i, j, k] = #{(x, y) : x ∈ C_i, y ∈ C_j, xy = reps[k]}"""

    def build() -> np.ndarray:
        G = cd.group
        index = G.element_index
        class_index = cd.class_index
        r = cd.count
        reps = [rep.images for rep in cd.reps]
        flat: List[int] = []
        for pos, x in enumerate(G.elements):
            ci = class_index[pos] * r * r
            x_inv = invert(x)
            for k, rep in enumerate(reps):
                flat.append(ci + class_index[index[compose(x_inv, rep)]] * r + k)
        a = np.bincount(np.array(flat, dtype=np.int64), minlength=r ** 3).reshape(r, r, r)
        sizes = np.array(cd.sizes, dtype=np.int64)
        lhs = a @ sizes
        rhs = np.outer(sizes, sizes)
        if not np.array_equal(lhs, rhs):
            raise InvariantViolation("类乘法常数不满足 Σ_k a_ijk |C_k| = |C_i||C_j|")
        return a

    return cd.group.memo("structure_constants", build)


def class_matrix(cd: ClassData, i: int) -> np.ndarray:
    """M_i[j, k] = a_ijk；中心特征标 ω 满足 M_i ω = ω_i ω"""
    return structure_constants(cd)[i]


def _split(B: np.ndarray, M: np.ndarray, ell: int) -> List[np.ndarray]:
    """把行最简基 B 张成的 M-不变子空间按特征值拆开（特征值升序）"""
    _, pivots = rref_mod(B, ell)
    A = matmul_mod(M, B.T, ell)[pivots, :]
    d = A.shape[0]
    parts = []
    for lam in split_roots_mod(charpoly_mod(A, ell), ell):
        Y = nullspace_mod((A - lam * np.eye(d, dtype=np.int64)) % ell, ell)
        W, _ = rref_mod(matmul_mod(Y, B, ell), ell)
        parts.append(W)
    if sum(W.shape[0] for W in parts) != d:
        raise InvariantViolation("类矩阵在公共特征子空间上不可对角化")
    return parts


def _central_characters(cd: ClassData, ell: int) -> List[np.ndarray]:
    r = cd.count
    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(B.shape[0] == 1 for B in spaces):
            break
        M = class_matrix(cd, i) % ell
        spaces = [W for B in spaces for W in (_split(B, M, ell) if B.shape[0] > 1 else [B])]
        logger.debug("split by class %d: dims=%s", i, [B.shape[0] for B in spaces])
    if len(spaces) != r or any(B.shape[0] != 1 for B in spaces):
        raise InvariantViolation(f"特征空间拆分失败: dims={[B.shape[0] for B in spaces]}")
    omegas = []
    for B in spaces:
        v = B[0]
        omegas.append((v * pow(int(v[0]), -1, ell)) % ell)
    return omegas


def _degree(cd: ClassData, omega: np.ndarray, ell: int) -> int:
    order = cd.group.order
    s = 0
    for j in range(cd.count):
        s = (s + int(omega[j]) * int(omega[cd.inverse_class(j)]) * pow(cd.sizes[j], -1, ell)) % ell
    target = order * pow(s, -1, ell) % ell
    d = isqrt(target)
    if d < 1 or d * d != target or target > order:
        raise InvariantViolation(f"次数提升失败: d^2 ≡ {target} (mod {ell})")
    return d


def _lift_values(cd: ClassData, chi_mod: np.ndarray, degrees: Sequence[int], e: int, ell: int) -> np.ndarray:
    """离散 Fourier 提升：m_k = e^{-1} Σ_t χ(g^t) θ^{-tk}"""
    theta = pow(int(primitive_root(ell)), (ell - 1) // e, ell)
    theta_pow = np.array([pow(theta, m, ell) for m in range(e)], dtype=np.int64)
    t = np.arange(e, dtype=np.int64)
    W = theta_pow[(-np.outer(t, t)) % e]
    e_inv = pow(e, -1, ell)
    r = cd.count
    values = np.zeros((len(degrees), r, e), dtype=np.int64)
    bounds = np.array(degrees, dtype=np.int64)[:, None]
    for c in range(r):
        cols = [cd.power_map(c, s) for s in range(e)]
        X = chi_mod[:, cols]
        m = matmul_mod(X, W, ell) * e_inv % ell
        if np.any(m > bounds):
            raise InvariantViolation(f"类 {c} 的重数提升超出 [0, χ(1)]")
        values[:, c, :] = m
    return values


def dixon_schneider(G: PermGroup) -> CharacterTable:
    return G.memo("character_table", lambda: _build_table(G))


def _build_table(G: PermGroup) -> CharacterTable:
    cd = conjugacy_classes(G)
    e = cd.exponent
    ell = lifting_prime(G.order, e)
    check_modulus(ell)
    logger.debug("|G|=%d classes=%d exponent=%d lifting prime=%d", G.order, cd.count, e, ell)

    omegas = _central_characters(cd, ell)
    degrees = [_degree(cd, w, ell) for w in omegas]
    sizes_inv = np.array([pow(s, -1, ell) for s in cd.sizes], dtype=np.int64)
    chi_mod = np.array(
        [(d * w % ell) * sizes_inv % ell for d, w in zip(degrees, omegas)], dtype=np.int64
    )
    values = _lift_values(cd, chi_mod, degrees, e, ell)

    def is_trivial(i: int) -> bool:
        return degrees[i] == 1 and bool(np.all(values[i, :, 0] == 1))

    order = sorted(
        range(len(degrees)),
        key=lambda i: (degrees[i], not is_trivial(i), tuple(values[i].ravel().tolist())),
    )
    degrees = [degrees[i] for i in order]
    values = values[order]

    kernels = []
    codegrees = []
    for i, d in enumerate(degrees):
        ker = frozenset(
            c for c in range(cd.count) if values[i, c, 0] == d and not np.any(values[i, c, 1:])
        )
        kernels.append(ker)
        index = G.order // sum(cd.sizes[c] for c in ker)
        if index % d:
            raise InvariantViolation(f"χ(1)={d} 不整除 |G:ker χ|={index}")
        codegrees.append(index // d)

    table = CharacterTable(
        group_order=G.order,
        exponent=e,
        lifting_prime=ell,
        class_sizes=tuple(cd.sizes),
        degrees=tuple(degrees),
        values=values,
        kernels=tuple(kernels),
        codegrees=tuple(codegrees),
    )
    verify_table(table, cd)
    return table


def verify_table(table: CharacterTable, cd: ClassData) -> None:
    """平方和、平凡行、精确行正交、单位列正交、核封闭性"""
    e, r = table.exponent, len(table.class_sizes)
    if sum(d * d for d in table.degrees) != table.group_order:
        raise InvariantViolation("Σ χ(1)^2 != |G|")
    if table.count != r:
        raise InvariantViolation("特征标个数 != 类数")
    if table.degrees[0] != 1 or len(table.kernels[0]) != r:
        raise InvariantViolation("第 0 行不是平凡特征标")
    sizes = np.array(table.class_sizes, dtype=np.int64)
    conj = table.values[:, :, (-np.arange(e)) % e]
    for i in range(r):
        for j in range(i, r):
            acc = np.zeros(e, dtype=np.int64)
            for c in range(r):
                acc += sizes[c] * cyclotomic.multiply(table.values[i, c], conj[j, c])
            expected = table.group_order if i == j else 0
            if not cyclotomic.equals_integer(acc, e, expected):
                raise InvariantViolation(f"行正交失败: <χ_{i}, χ_{j}>")
    degrees = np.array(table.degrees, dtype=np.int64)
    for c in range(1, r):
        column = (degrees[:, None] * table.values[:, c, :]).sum(axis=0)
        if not cyclotomic.equals_integer(column, e, 0):
            raise InvariantViolation(f"单位列与第 {c} 列不正交")
    for i, ker in enumerate(table.kernels):
        for c1 in ker:
            for c2 in ker:
                product = compose(cd.reps[c1].images, cd.reps[c2].images)
                if cd.class_of(product) not in ker:
                    raise InvariantViolation(f"χ_{i} 的核在乘法下不封闭")


def kernels(table: CharacterTable) -> Tuple[FrozenSet[int], ...]:
    return table.kernels


def codegrees(table: CharacterTable) -> Tuple[int, ...]:
    return table.codegrees


def classes_meeting(cd: ClassData, V: PermGroup) -> FrozenSet[int]:
    return frozenset(cd.class_of(v) for v in V.elements)


def relative_degrees(G: PermGroup, V: PermGroup) -> List[int]:
    """cd(G|V)：核不包含 V 的不可约特征标的次数集合"""
    table = dixon_schneider(G)
    meets = classes_meeting(conjugacy_classes(G), V)
    return sorted({d for d, ker in zip(table.degrees, table.kernels) if not meets <= ker})
