from __future__ import annotations

import itertools
import logging
from typing import Callable, Dict, List, Sequence, Tuple

from sympy import isprime

from .conjugacy import spectrum
from .constants import ENUMERATION_CAP
from .errors import EnumerationCapExceeded, GroupDataError
from .finite_field import FiniteField, field_of_order, finite_field
from .perm_group import PermGroup
from .permutation import Permutation
from .recognition import psl2_order, sl2_order
from .structure import is_simple

logger = logging.getLogger(__name__)

Constructor = Callable[..., PermGroup]
Matrix = Sequence[Sequence[int]]

_CONSTRUCTOR_REGISTRY: Dict[str, Constructor] = {}


def group_constructor(name: str):
    """使用装饰器注册内置群构造器，参数在 ``name:a,b`` 形式中以整数给出。

    示例:
        @group_constructor("cyclic")
        def cyclic(n: int) -> PermGroup:
            ...
    """

    normalized = name.strip().lower()

    def decorator(fn: Constructor) -> Constructor:
        if normalized in _CONSTRUCTOR_REGISTRY:
            raise ValueError(f"构造器已存在: {normalized}")
        _CONSTRUCTOR_REGISTRY[normalized] = fn
        return fn

    return decorator


def available_constructors() -> List[str]:
    return sorted(_CONSTRUCTOR_REGISTRY)


def parse_builtin(spec: str) -> Tuple[str, List[int]]:
    name, _, params = spec.strip().partition(":")
    name = name.strip().lower()
    try:
        args = [int(a) for a in params.split(",")] if params.strip() else []
    except ValueError:
        raise GroupDataError(f"构造参数必须是整数: {spec}") from None
    return name, args


def build_builtin(spec: str) -> PermGroup:
    name, args = parse_builtin(spec)
    fn = _CONSTRUCTOR_REGISTRY.get(name)
    if fn is None:
        raise GroupDataError(f"未知的内置群: {name}（可选: {', '.join(available_constructors())}）")
    try:
        return fn(*args)
    except TypeError as exc:
        raise GroupDataError(f"{name} 的参数个数不对: {args}") from exc


def _validated(G: PermGroup, expected: int, label: str) -> PermGroup:
    if G.order != expected:
        raise GroupDataError(f"{label} 校验失败: 阶 {G.order} != {expected}")
    return G


# ---- 置换群族 ----

@group_constructor("symmetric")
def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise GroupDataError(f"symmetric 需要 n ≥ 1: {n}")
    if n == 1:
        return PermGroup(1)
    gens = [Permutation.from_cycles(n, [(1, 2)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [tuple(range(1, n + 1))]))
    return PermGroup(n, gens)


@group_constructor("alternating")
def alternating(n: int) -> PermGroup:
    if n < 1:
        raise GroupDataError(f"alternating 需要 n ≥ 1: {n}")
    gens = [Permutation.from_cycles(n, [(1, 2, k)]) for k in range(3, n + 1)]
    return PermGroup(n, gens)


@group_constructor("cyclic")
def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise GroupDataError(f"cyclic 需要 n ≥ 1: {n}")
    gens = [Permutation.from_cycles(n, [tuple(range(1, n + 1))])] if n > 1 else []
    return PermGroup(n, gens)


@group_constructor("dihedral")
def dihedral(order: int) -> PermGroup:
    """阶为 order = 2n 的二面体群，作用在正 n 边形顶点上"""
    if order % 2 or order < 6:
        raise GroupDataError(f"dihedral 需要偶数阶 ≥ 6: {order}")
    n = order // 2
    rotation = Permutation.from_cycles(n, [tuple(range(1, n + 1))])
    reflection = Permutation.from_one_based([n + 1 - i for i in range(1, n + 1)])
    return _validated(PermGroup(n, [rotation, reflection]), order, f"dihedral({order})")


# 单位四元数 1, i, j, k 的乘法：(u, v) -> (符号, 单位)
_UNIT_PRODUCT = {
    (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def _quaternion_mul(a: int, b: int) -> int:
    ua, sa = divmod(a, 2)
    ub, sb = divmod(b, 2)
    if ua == 0 or ub == 0:
        sign, unit = 1, ua + ub
    else:
        sign, unit = _UNIT_PRODUCT[(ua, ub)]
    negative = (sa + sb + (sign < 0)) % 2
    return 2 * unit + negative


@group_constructor("quaternion8")
def quaternion8() -> PermGroup:
    """Q_8 的右正则表示；点 2u+s 表示 (-1)^s · (1, i, j, k)[u]"""
    gens = [Permutation([_quaternion_mul(x, g) for x in range(8)]) for g in (2, 4)]
    return _validated(PermGroup(8, gens), 8, "quaternion8")


# ---- 有限域上的线性群 ----

def _vec_mat(F: FiniteField, v: Sequence[int], M: Matrix) -> Tuple[int, ...]:
    """行向量右乘矩阵"""
    out = []
    for j in range(len(M[0])):
        acc = 0
        for i, vi in enumerate(v):
            if vi:
                acc = F.add(acc, F.mul(vi, M[i][j]))
        out.append(acc)
    return tuple(out)


def _vec_add(F: FiniteField, u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(F.add(a, b) for a, b in zip(u, v))


def _action(points: List[Tuple[int, ...]], image: Callable[[Tuple[int, ...]], Tuple[int, ...]]) -> Permutation:
    index = {pt: i for i, pt in enumerate(points)}
    return Permutation([index[image(pt)] for pt in points])


def _transvections(F: FiniteField) -> List[Matrix]:
    """x(ω^i) 与 y(ω^i)，i 取遍 F 在素域上的次数"""
    mats: List[Matrix] = []
    for i in range(F.n):
        a = F.omega(i)
        mats.append(((1, a), (0, 1)))
        mats.append(((1, 0), (a, 1)))
    return mats


def _nonzero_vectors(F: FiniteField, dim: int) -> List[Tuple[int, ...]]:
    return [v for v in itertools.product(F.elements(), repeat=dim) if any(v)]


def _linear_group(F: FiniteField, mats: Sequence[Matrix], dim: int = 2) -> PermGroup:
    points = _nonzero_vectors(F, dim)
    gens = [_action(points, lambda v, M=M: _vec_mat(F, v, M)) for M in mats]
    return PermGroup(len(points), gens)


@group_constructor("sl2")
def sl2(q: int, modulus_rank: int = 0) -> PermGroup:
    F = field_of_order(q, modulus_rank)
    return _validated(_linear_group(F, _transvections(F)), sl2_order(q), f"sl2({q})")


@group_constructor("gl2_3")
def gl2_3() -> PermGroup:
    F = finite_field(3)
    mats = _transvections(F) + [((2, 0), (0, 1))]
    return _validated(_linear_group(F, mats), 48, "gl2_3")


def _projective_line(F: FiniteField) -> List[Tuple[int, int]]:
    return [(x, 1) for x in F.elements()] + [(1, 0)]


def _normalize_projective(F: FiniteField, v: Sequence[int]) -> Tuple[int, ...]:
    """首个非零坐标化为 1"""
    for c in v:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in v)
    raise GroupDataError("零向量没有射影点")


def _normalize_line_point(F: FiniteField, v: Sequence[int]) -> Tuple[int, int]:
    a, b = v
    if b:
        return (F.mul(a, F.inv(b)), 1)
    return (1, 0)


@group_constructor("psl2")
def psl2(q: int, modulus_rank: int = 0) -> PermGroup:
    F = field_of_order(q, modulus_rank)
    points = _projective_line(F)
    gens = [_action(points, lambda v, M=M: _normalize_line_point(F, _vec_mat(F, v, M))) for M in _transvections(F)]
    return _validated(PermGroup(len(points), gens), psl2_order(q), f"psl2({q})")


def _affine_group(F: FiniteField, mats: Sequence[Matrix], translations: Sequence[Tuple[int, int]]) -> PermGroup:
    points = list(itertools.product(F.elements(), repeat=2))
    gens = [_action(points, lambda v, u=u: _vec_add(F, v, u)) for u in translations]
    gens += [_action(points, lambda v, M=M: _vec_mat(F, v, M)) for M in mats]
    return PermGroup(len(points), gens)


@group_constructor("asl2")
def asl2(q: int, modulus_rank: int = 0) -> PermGroup:
    """F_q^2 上的仿射特殊线性群：平移 (1, 0) 与 SL_2(q) 的生成元"""
    F = field_of_order(q, modulus_rank)
    G = _affine_group(F, _transvections(F), [(1, 0)])
    return _validated(G, q ** 2 * sl2_order(q), f"asl2({q})")


@group_constructor("sl2_5_module")
def sl2_5_module() -> PermGroup:
    """SL_2(5) ≤ SL_2(9) 作用在 F_9^2 = F_3^4 上的仿射群，阶 81·120。

    A = [[0, 1], [-1, 0]]（阶 4），B = [[-1, 0], [φ, -1]]（阶 6），
    φ 取 t^2 + 2t + 2 的较小根，使 AB 的迹为 φ、阶为 10。
    """
    F = field_of_order(9)
    phi = min(F.roots([1, 2, 2]))
    minus_one = F.neg(1)
    A = ((0, 1), (minus_one, 0))
    B = ((minus_one, 0), (phi, minus_one))
    return _validated(_affine_group(F, [A, B], [(1, 0)]), 81 * 120, "sl2_5_module")


@group_constructor("gamma_family")
def gamma_family(p: int, m: int) -> PermGroup:
    """F_{p^{pm}} 上的 x ↦ a x^σ + b：平移、ω^{p^m - 1} 的乘法与 x ↦ x^{p^m}"""
    if not isprime(p) or m < 1:
        raise GroupDataError(f"gamma_family 参数不合法: p={p}, m={m}")
    if p * m >= ENUMERATION_CAP.bit_length():
        raise GroupDataError(f"gamma_family({p},{m}) 的阶至少为 2^{p * m}，超过枚举上限")
    q = p ** (p * m)
    expected = q * ((q - 1) // (p ** m - 1)) * p
    if expected > ENUMERATION_CAP:
        raise EnumerationCapExceeded(expected, ENUMERATION_CAP)
    F = finite_field(p, p * m)
    points = [(x,) for x in F.elements()]
    gens = [_action(points, lambda v, b=b: (F.add(v[0], b),)) for b in F.basis()]
    a = F.omega(p ** m - 1)
    gens.append(_action(points, lambda v: (F.mul(a, v[0]),)))
    gens.append(_action(points, lambda v: (F.frobenius(v[0], m),)))
    return _validated(PermGroup(q, gens), expected, f"gamma_family({p},{m})")


# ---- 散在 / 例外 ----

@group_constructor("mathieu11")
def mathieu11() -> PermGroup:
    gens = [
        Permutation.from_cycles(11, [tuple(range(1, 12))]),
        Permutation.from_cycles(11, [(3, 7, 11, 8), (4, 10, 5, 6)]),
    ]
    G = _validated(PermGroup(11, gens), 7920, "mathieu11")
    if not is_simple(G):
        raise GroupDataError("mathieu11 校验失败: 不是单群")
    return G


@group_constructor("psl3_4")
def psl3_4() -> PermGroup:
    """PG(2, 4) 的 21 个点上由初等平延 I + a E_ij（a ∈ {1, ω}）生成"""
    F = field_of_order(4)
    points = sorted({_normalize_projective(F, v) for v in _nonzero_vectors(F, 3)})
    gens = []
    for i, j in itertools.permutations(range(3), 2):
        for a in F.basis():
            M = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
            M[i][j] = a
            gens.append(_action(points, lambda v, M=M: _normalize_projective(F, _vec_mat(F, v, M))))
    G = _validated(PermGroup(len(points), gens), 20160, "psl3_4")
    if not is_simple(G) or 15 in spectrum(G):
        raise GroupDataError("psl3_4 校验失败: 不是单群或含 15 阶元")
    return G
