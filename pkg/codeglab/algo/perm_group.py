from __future__ import annotations

import logging
from dataclasses import dataclass
from math import prod
from typing import Any, Callable, Dict, Iterable, List, Sequence, Tuple

from .constants import ENUMERATION_CAP
from .errors import (
    EnumerationCapExceeded,
    GroupDataError,
    InvariantViolation,
    MembershipError,
    PreconditionError,
)
from .permutation import Images, Permutation, compose, identity, invert

logger = logging.getLogger(__name__)


def _first_moved_point(g: Images) -> int:
    for i, j in enumerate(g):
        if i != j:
            return i
    return -1


def _orbit_transversal(gens: Sequence[Images], point: int, degree: int) -> Dict[int, Images]:
    """BFS 轨道，返回 点 -> 把 point 送到该点的陪集代表"""
    trans = {point: identity(degree)}
    queue = [point]
    for pt in queue:
        u = trans[pt]
        for s in gens:
            nxt = s[pt]
            if nxt not in trans:
                trans[nxt] = compose(u, s)
                queue.append(nxt)
    return trans


class StabilizerChain:
    """确定性 Schreier–Sims 得到的基与强生成集。

    第 i 层保存稳定 base[0..i-1] 的生成元以及 base[i] 的轨道陪集代表。
    """

    def __init__(self, degree: int, generators: Sequence[Images]) -> None:
        self.degree = degree
        self.base: List[int] = []
        self.level_gens: List[List[Images]] = []
        self.transversals: List[Dict[int, Images]] = []
        self._inverse_cache: Dict[Images, Images] = {}
        ident = identity(degree)
        gens = [g for g in dict.fromkeys(generators) if g != ident]
        self._build(gens)

    def _inverse(self, g: Images) -> Images:
        inv = self._inverse_cache.get(g)
        if inv is None:
            inv = invert(g)
            self._inverse_cache[g] = inv
        return inv

    def _retransverse(self, level: int) -> None:
        self.transversals[level] = _orbit_transversal(
            self.level_gens[level], self.base[level], self.degree
        )

    def strip(self, g: Images, start: int = 0) -> Tuple[Images, int]:
        """筛：返回 (残余, 失败层号)；全部通过时层号等于基长度"""
        for level in range(start, len(self.base)):
            u = self.transversals[level].get(g[self.base[level]])
            if u is None:
                return g, level
            g = compose(g, self._inverse(u))
        return g, len(self.base)

    def _build(self, gens: List[Images]) -> None:
        for g in gens:
            if all(g[b] == b for b in self.base):
                self.base.append(_first_moved_point(g))
        for i in range(len(self.base)):
            fixed = self.base[:i]
            self.level_gens.append([g for g in gens if all(g[b] == b for b in fixed)])
            self.transversals.append({})
            self._retransverse(i)

        ident = identity(self.degree)
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            for beta, u_beta in list(self.transversals[i].items()):
                for s in self.level_gens[i]:
                    g1 = compose(u_beta, s)
                    u1 = self.transversals[i][s[beta]]
                    if g1 == u1:
                        continue
                    h, j = self.strip(compose(g1, self._inverse(u1)), i + 1)
                    if j == len(self.base):
                        if h == ident:
                            continue
                        self.base.append(_first_moved_point(h))
                        self.level_gens.append([])
                        self.transversals.append({})
                    for level in range(i + 1, j + 1):
                        self.level_gens[level].append(h)
                        self._retransverse(level)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1
        logger.debug("stabilizer chain: base=%s orbit sizes=%s", self.base, self.orbit_sizes())

    def orbit_sizes(self) -> List[int]:
        return [len(t) for t in self.transversals]

    def order(self) -> int:
        return prod(self.orbit_sizes())

    def contains(self, g: Images) -> bool:
        h, level = self.strip(g)
        return level == len(self.base) and h == identity(self.degree)

    def enumerate(self) -> List[Images]:
        """按 g = x_k ... x_1（最深层先作用）展开所有元素"""
        elems = [identity(self.degree)]
        for level in reversed(range(len(self.base))):
            reps = list(self.transversals[level].values())
            elems = [compose(h, u) for h in elems for u in reps]
        return elems


class PermGroup:
    """置换群：生成元 + 稳定子链。子群始终保持外围次数。

    需要全枚举的结构（元素列表、共轭类、特征标表）通过 :meth:`memo`
    缓存在实例上；构造后不再修改生成元。
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()) -> None:
        if degree < 1:
            raise GroupDataError(f"次数必须为正整数: {degree}")
        generators = tuple(generators)
        for g in generators:
            if not isinstance(g, Permutation):
                raise GroupDataError(f"生成元类型错误: {type(g).__name__}")
            if g.degree != degree:
                raise GroupDataError(f"生成元次数 {g.degree} 与群次数 {degree} 不一致")
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = generators
        self.chain = StabilizerChain(degree, [g.images for g in generators])
        self.order: int = self.chain.order()
        self._cache: Dict[str, Any] = {}

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={len(self.generators)})"

    # ---- 缓存 ----
    def memo(self, key: str, factory: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    # ---- 基本查询 ----
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return self.chain.contains(g.images)

    __contains__ = contains

    def require_member(self, g: Permutation) -> None:
        if not self.contains(g):
            raise MembershipError(f"元素 {g} 不在群中 (|G|={self.order})")

    def is_trivial(self) -> bool:
        return self.order == 1

    def subgroup(self, generators: Iterable[Permutation]) -> "PermGroup":
        return PermGroup(self.degree, generators)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        if not self.is_subgroup_of(other):
            return False
        return all(self.contains(h.conjugate(g)) for h in self.generators for g in other.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def same_as(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    # ---- 枚举 ----
    def check_cap(self) -> None:
        if self.order > ENUMERATION_CAP:
            raise EnumerationCapExceeded(self.order, ENUMERATION_CAP)

    @property
    def elements(self) -> List[Images]:
        """按字典序排好的全部元素（像数组）；第 0 个是单位元"""

        def build() -> List[Images]:
            self.check_cap()
            elems = sorted(self.chain.enumerate())
            if len(elems) != self.order:
                raise InvariantViolation(f"枚举得到 {len(elems)} 个元素，链给出阶 {self.order}")
            return elems

        return self.memo("elements", build)

    @property
    def element_index(self) -> Dict[Images, int]:
        return self.memo("element_index", lambda: {g: i for i, g in enumerate(self.elements)})

    def index_of(self, g: Images) -> int:
        try:
            return self.element_index[g]
        except KeyError:
            raise MembershipError("元素不在群中") from None

    def permutations(self) -> List[Permutation]:
        return [Permutation._trusted(g) for g in self.elements]


def build_group(degree: int, generators: Iterable[Permutation]) -> PermGroup:
    return PermGroup(degree, generators)


def trivial_subgroup(G: PermGroup) -> PermGroup:
    return PermGroup(G.degree)


def closure_elements(degree: int, generators: Sequence[Permutation], limit: int = ENUMERATION_CAP) -> List[Images]:
    """生成元的广度优先闭包，作为链阶数的独立核对"""
    start = identity(degree)
    seen = {start}
    queue = [start]
    gens = [g.images for g in generators]
    for x in queue:
        for s in gens:
            y = compose(x, s)
            if y not in seen:
                if len(seen) >= limit:
                    raise EnumerationCapExceeded(len(seen) + 1, limit)
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def subgroup_from_elements(degree: int, elements: Iterable[Images]) -> PermGroup:
    """由一组（已知构成子群的）元素贪心挑出生成元"""
    H = PermGroup(degree)
    gens: List[Permutation] = []
    for g in elements:
        if not H.chain.contains(g):
            gens.append(Permutation._trusted(g))
            H = PermGroup(degree, gens)
    return H


def normal_closure(G: PermGroup, S: Iterable[Permutation]) -> PermGroup:
    """S 在 G 中的正规闭包：反复加入不在当前子群中的共轭"""
    S = list(S)
    for s in S:
        G.require_member(s)
    gens = [s for s in S if not s.is_identity()]
    H = PermGroup(G.degree, gens)
    queue = list(gens)
    while queue:
        h = queue.pop(0)
        for g in G.generators:
            c = h.conjugate(g)
            if not H.contains(c):
                gens.append(c)
                H = PermGroup(G.degree, gens)
                queue.append(c)
    return H


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    commutators = [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, commutators)


def derived_series(G: PermGroup) -> List[PermGroup]:
    """G = G^(0) > G^(1) > ... 直到稳定"""
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def centralizer(G: PermGroup, x: Permutation) -> PermGroup:
    G.require_member(x)
    xi = x.images
    elems = (g for g in G.elements if compose(g, xi) == compose(xi, g))
    return subgroup_from_elements(G.degree, elems)


def centralizer_of_subgroup(G: PermGroup, H: PermGroup) -> PermGroup:
    gens = [h.images for h in H.generators]
    if not H.is_subgroup_of(G):
        raise MembershipError("子群不在 G 中")
    elems = (g for g in G.elements if all(compose(g, h) == compose(h, g) for h in gens))
    return subgroup_from_elements(G.degree, elems)


def center(G: PermGroup) -> PermGroup:
    return G.memo("center", lambda: centralizer_of_subgroup(G, G))


def intersection(A: PermGroup, B: PermGroup) -> PermGroup:
    small, big = (A, B) if A.order <= B.order else (B, A)
    return subgroup_from_elements(A.degree, (g for g in small.elements if big.chain.contains(g)))


@dataclass(frozen=True)
class CosetEpimorphism:
    """G -> G/N，由 G 在右陪集 Ng 上的右乘作用给出；陪集 0 是 N 本身"""

    source: PermGroup
    target: PermGroup
    kernel: PermGroup
    coset_of: Tuple[int, ...]
    coset_reps: Tuple[Images, ...]

    def image_of(self, g: Images) -> Images:
        index = self.source.element_index
        return tuple(self.coset_of[index[compose(rep, g)]] for rep in self.coset_reps)

    def __call__(self, g: Permutation) -> Permutation:
        self.source.require_member(g)
        return Permutation._trusted(self.image_of(g.images))

    def preimage_element(self, q: Permutation) -> Permutation:
        return Permutation._trusted(self.coset_reps[q.images[0]])

    def preimage(self, H: PermGroup) -> PermGroup:
        """H ≤ G/N 的完全原像"""
        gens = list(self.kernel.generators) + [self.preimage_element(h) for h in H.generators]
        return PermGroup(self.source.degree, gens)

    def image(self, H: PermGroup) -> PermGroup:
        return PermGroup(self.target.degree, [self(h) for h in H.generators])


def quotient(G: PermGroup, N: PermGroup) -> Tuple[PermGroup, CosetEpimorphism]:
    if not N.is_subgroup_of(G):
        raise MembershipError("N 不是 G 的子群")
    if not N.is_normal_in(G):
        raise PreconditionError("N 在 G 中不正规")
    elems = G.elements
    index = G.element_index
    coset_of = [-1] * len(elems)
    reps: List[Images] = []
    n_elems = N.elements
    for i, g in enumerate(elems):
        if coset_of[i] != -1:
            continue
        c = len(reps)
        reps.append(g)
        for n in n_elems:
            coset_of[index[compose(n, g)]] = c
    phi_partial = CosetEpimorphism(G, PermGroup(len(reps)), N, tuple(coset_of), tuple(reps))
    images = [Permutation._trusted(phi_partial.image_of(g.images)) for g in G.generators]
    Q = PermGroup(len(reps), images)
    phi = CosetEpimorphism(G, Q, N, tuple(coset_of), tuple(reps))
    if Q.order * N.order != G.order:
        raise InvariantViolation(f"|G/N|·|N| = {Q.order}·{N.order} != |G| = {G.order}")
    gens = G.generators
    for a in gens[:4]:
        for b in gens[:4]:
            if phi(a * b) != phi(a) * phi(b):
                raise InvariantViolation("陪集作用不是同态")
    logger.debug("quotient |G|=%d / |N|=%d -> degree %d", G.order, N.order, Q.degree)
    return Q, phi
