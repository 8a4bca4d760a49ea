from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Tuple

from .character_table import CharacterTable, classes_meeting, dixon_schneider, relative_degrees
from .conjugacy import conjugacy_classes
from .constants import (
    A_TO_C,
    CASE4_READING_ALTERNATIVE,
    CASE4_READING_KERNEL,
    CASE_LABELS_A,
    CASE_LABELS_C,
    ENUMERATION_CAP,
)
from .errors import BiconditionalViolation, EnumerationCapExceeded, InvariantViolation, PreconditionError
from .finite_field import prime_power
from .perm_group import (
    CosetEpimorphism,
    PermGroup,
    centralizer_of_subgroup,
    derived_subgroup,
    intersection,
    quotient,
)
from .recognition import (
    is_asl2_3,
    is_named,
    is_psl2,
    is_sl2,
    psl2_parameters,
    recognize_named,
    sl2_parameters,
    square_root_prime_power,
)
from .structure import (
    commute,
    fitting_subgroup,
    is_cyclic,
    is_elementary_abelian,
    is_frobenius_with_kernel,
    is_minimal_normal,
    is_nonabelian_simple,
    is_perfect,
    is_solvable,
    is_ti_subgroup,
    nonidentity_orbits,
    normal_subgroups_from_classes,
    p_core,
    p_part,
    p_prime_core,
    p_residual,
    sylow_subgroup,
)

logger = logging.getLogger(__name__)

CaseParams = Dict[str, Any]


# ---- 直接判定（特征标表） ----

@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Dict[str, int]] = None


def _character_witness(table: CharacterTable, i: int) -> Dict[str, int]:
    return {"index": i, "degree": table.degrees[i], "codegree": table.codegrees[i]}


def is_hp_direct(table: CharacterTable, p: int) -> Verdict:
    """每个 χ 都有 p ∤ gcd(χ(1), cod(χ))；否则给出最小的违例下标"""
    for i, (d, cod) in enumerate(zip(table.degrees, table.codegrees)):
        if gcd(d, cod) % p == 0:
            return Verdict(False, _character_witness(table, i))
    return Verdict(True)


def is_hp_star_direct(table: CharacterTable, p: int) -> Verdict:
    """每个 χ 的次数与 p 互素，或 χ(1)_p = |G|_p"""
    full = p_part(table.group_order, p)
    for i, d in enumerate(table.degrees):
        if d % p == 0 and p_part(d, p) != full:
            return Verdict(False, _character_witness(table, i))
    return Verdict(True)


def has_abelian_ti_sylow(G: PermGroup, p: int) -> bool:
    P = sylow_subgroup(G, p)
    return P.is_abelian() and is_ti_subgroup(G, P)


# ---- 结构判定 ----

class StructuralContext:
    """一对 (G, p) 上各情形共用的子群，按需计算"""

    def __init__(self, G: PermGroup, p: int) -> None:
        self.G = G
        self.p = p

    @cached_property
    def N(self) -> PermGroup:
        return p_residual(self.G, self.p)

    @cached_property
    def sylow_N(self) -> PermGroup:
        return sylow_subgroup(self.N, self.p)

    @cached_property
    def derived_N(self) -> PermGroup:
        return derived_subgroup(self.N)

    @cached_property
    def V(self) -> PermGroup:
        """O_p(N)"""
        return p_core(self.N, self.p)

    @cached_property
    def N_mod_V(self) -> Tuple[PermGroup, CosetEpimorphism]:
        return quotient(self.N, self.V)

    @cached_property
    def O_pprime(self) -> PermGroup:
        return p_prime_core(self.N, self.p)

    @cached_property
    def N_simple(self) -> bool:
        return is_nonabelian_simple(self.N)

    @cached_property
    def self_centralizing_V(self) -> bool:
        V = self.V
        return V.order > 1 and centralizer_of_subgroup(self.N, V).order == V.order

    @cached_property
    def six_applies(self) -> bool:
        if self.p == 2 or self.O_pprime.order == 1:
            return False
        Q, _ = quotient(self.N, self.O_pprime)
        return is_nonabelian_simple(Q)


CaseEvaluator = Callable[[StructuralContext], Optional[CaseParams]]

_CASE_REGISTRY: Dict[str, CaseEvaluator] = {}


def theorem_case(label: str):
    """使用装饰器注册分类情形的判定函数；返回参数字典表示该情形成立"""

    def decorator(fn: CaseEvaluator) -> CaseEvaluator:
        if label not in CASE_LABELS_A:
            raise ValueError(f"未知的情形标签: {label}")
        _CASE_REGISTRY[label] = fn
        return fn

    return decorator


@theorem_case("1")
def _abelian_normal_sylow(ctx: StructuralContext) -> Optional[CaseParams]:
    P = sylow_subgroup(ctx.G, ctx.p)
    if P.is_abelian() and P.is_normal_in(ctx.G):
        return {"sylow_order": P.order}
    return None


@theorem_case("2")
def _cyclic_ti_complement(ctx: StructuralContext) -> Optional[CaseParams]:
    N, P, D = ctx.N, ctx.sylow_N, ctx.derived_N
    if D.order == 1 or P.order == 1 or not is_cyclic(P):
        return None
    if D.order * P.order != N.order or intersection(D, P).order != 1:
        return None
    if not is_ti_subgroup(N, P):
        return None
    return {"sylow_order": P.order, "derived_order": D.order, "derived_solvable": is_solvable(D)}


@theorem_case("3")
def _affine_sl2_3(ctx: StructuralContext) -> Optional[CaseParams]:
    if ctx.p == 3 and is_asl2_3(ctx.N):
        return {"q": 3}
    return None


@theorem_case("4")
def _frobenius_tower(ctx: StructuralContext) -> Optional[CaseParams]:
    p, N, V = ctx.p, ctx.N, ctx.V
    if V.order == 1 or not is_elementary_abelian(V, p):
        return None
    _, a = prime_power(V.order)
    if a % p:
        return None
    m = a // p
    Q, phi = ctx.N_mod_V
    F = fitting_subgroup(Q)
    if not 1 < F.order < Q.order:
        return None
    K = phi.preimage(F)
    kernel_order = (p ** (p * m) - 1) // (p ** m - 1)
    if F.order != kernel_order or not is_cyclic(F):
        return None
    if N.order // K.order != p:
        return None
    if not is_frobenius_with_kernel(K, V) or not is_frobenius_with_kernel(Q, F):
        return None
    return {
        "m": m,
        "V_order": V.order,
        "K_over_V_order": F.order,
        "reading": CASE4_READING_KERNEL,
        "alternative_matches": F.order == (p ** m - 1) // (p - 1),
        "alternative_reading": CASE4_READING_ALTERNATIVE,
    }


@theorem_case("5a")
def _simple_cyclic_sylow(ctx: StructuralContext) -> Optional[CaseParams]:
    if ctx.p > 2 and ctx.N_simple and is_cyclic(ctx.sylow_N):
        return {"sylow_order": ctx.sylow_N.order}
    return None


def _field_exponent(q: int, p: int) -> int:
    r, f = prime_power(q)
    return f if r == p else 0


@theorem_case("5b")
def _simple_psl2(ctx: StructuralContext) -> Optional[CaseParams]:
    if not ctx.N_simple:
        return None
    for q in psl2_parameters(ctx.N.order):
        f = _field_exponent(q, ctx.p)
        if f >= 2 and is_psl2(ctx.N, q):
            return {"q": q, "f": f}
    return None


_SPORADIC_PAIRS = (("PSL_3(4)", 3), ("M_11", 3), ("TitsPrime", 5))


@theorem_case("5c")
def _simple_exceptional(ctx: StructuralContext) -> Optional[CaseParams]:
    if not ctx.N_simple:
        return None
    for name, prime in _SPORADIC_PAIRS:
        if ctx.p == prime and is_named(ctx.N, name):
            return {"name": name}
    return None


@theorem_case("6a")
def _quasi_cyclic_ti(ctx: StructuralContext) -> Optional[CaseParams]:
    if not ctx.six_applies:
        return None
    P = ctx.sylow_N
    if is_cyclic(P) and is_ti_subgroup(ctx.N, P):
        return {"sylow_order": P.order, "O_pprime_order": ctx.O_pprime.order}
    return None


@theorem_case("6b")
def _quasi_sl2(ctx: StructuralContext) -> Optional[CaseParams]:
    if not ctx.six_applies:
        return None
    for q in sl2_parameters(ctx.N.order):
        f = _field_exponent(q, ctx.p)
        if f >= 2 and is_sl2(ctx.N, q):
            return {"q": q, "f": f}
    return None


@theorem_case("6c")
def _quasi_psl3_4(ctx: StructuralContext) -> Optional[CaseParams]:
    if ctx.p != 3 or not ctx.six_applies or not is_perfect(ctx.N):
        return None
    O = ctx.O_pprime
    if not commute(O, ctx.N):
        return None
    Q, _ = quotient(ctx.N, O)
    if is_named(Q, "PSL_3(4)"):
        return {"O_pprime_order": O.order}
    return None


def _module_params(ctx: StructuralContext) -> CaseParams:
    orbits = nonidentity_orbits(ctx.N, ctx.V)
    return {
        "V_order": ctx.V.order,
        "orbit_sizes": list(orbits.sizes_with_identity),
        "cd_N_V": relative_degrees(ctx.N, ctx.V),
    }


@theorem_case("7a")
def _natural_module(ctx: StructuralContext) -> Optional[CaseParams]:
    if not ctx.self_centralizing_V:
        return None
    q = square_root_prime_power(ctx.V.order)
    if q is None or q < 4:
        return None
    Q, _ = ctx.N_mod_V
    if not is_sl2(Q, q) or not nonidentity_orbits(ctx.N, ctx.V).transitive:
        return None
    return {"q": q, **_module_params(ctx)}


@theorem_case("7b")
def _sl2_13_module(ctx: StructuralContext) -> Optional[CaseParams]:
    if ctx.p != 3 or ctx.V.order != 3 ** 6 or not ctx.self_centralizing_V:
        return None
    Q, _ = ctx.N_mod_V
    if not is_sl2(Q, 13) or not is_minimal_normal(ctx.N, ctx.V):
        return None
    if not nonidentity_orbits(ctx.N, ctx.V).transitive:
        return None
    return {"q": 13, **_module_params(ctx)}


@theorem_case("7c")
def _sl2_5_module(ctx: StructuralContext) -> Optional[CaseParams]:
    if ctx.p != 3 or ctx.V.order != 3 ** 4 or not ctx.self_centralizing_V:
        return None
    Q, _ = ctx.N_mod_V
    if not is_sl2(Q, 5) or not is_minimal_normal(ctx.N, ctx.V):
        return None
    if nonidentity_orbits(ctx.N, ctx.V).sizes_with_identity != (1, 40, 40):
        return None
    return {"q": 5, **_module_params(ctx)}


def theorem_a_classify(G: PermGroup, p: int) -> Dict[str, CaseParams]:
    """返回全部成立的情形（标签 -> 参数），从不只取第一个"""
    if G.order > ENUMERATION_CAP:
        return _classify_beyond_cap(G, p)
    ctx = StructuralContext(G, p)
    matches = {}
    for label in CASE_LABELS_A:
        evaluator = _CASE_REGISTRY.get(label)
        if evaluator is None:
            continue
        params = evaluator(ctx)
        if params is not None:
            matches[label] = params
    logger.debug("|G|=%d p=%d: cases %s", G.order, p, sorted(matches))
    return matches


def _classify_beyond_cap(G: PermGroup, p: int) -> Dict[str, CaseParams]:
    """超出枚举上限时只支持按阶识别的完全单群"""
    if p == 5 and not G.is_abelian() and is_perfect(G) and recognize_named(G).name == "TitsPrime":
        return {"5c": {"name": "TitsPrime", "order_only": True}}
    raise EnumerationCapExceeded(G.order, ENUMERATION_CAP)


def corollary_c_classify(G: PermGroup, p: int, a_cases: Optional[Dict[str, CaseParams]] = None) -> Dict[str, CaseParams]:
    if a_cases is None:
        a_cases = theorem_a_classify(G, p)
    return {A_TO_C[label]: params for label, params in a_cases.items() if label in A_TO_C}


def _sorted_labels(labels, order: List[str]) -> List[str]:
    return sorted(labels, key=order.index)


# ---- 交叉核对 ----

@dataclass
class ClassificationReport:
    group_id: str
    p: int
    direct_hp: bool
    direct_hp_star: bool
    abelian_ti_sylow: bool
    theorem_a_cases: List[str]
    corollary_c_cases: List[str]
    witnesses: Dict[str, Any]
    gcd_set: List[int]
    timings: Dict[str, float] = field(default_factory=dict)


class _Stopwatch:
    def __init__(self) -> None:
        self.timings: Dict[str, float] = {}

    def run(self, key: str, fn: Callable[[], Any]) -> Any:
        start = time.perf_counter()
        try:
            return fn()
        finally:
            self.timings[key] = round(time.perf_counter() - start, 6)


def cross_check(G: PermGroup, p: int, group_id: str = "G") -> ClassificationReport:
    """直接判定与结构分类互相核对；任何不一致都带着两侧数据抛出"""
    watch = _Stopwatch()
    table = watch.run("character_table", lambda: dixon_schneider(G))
    hp = is_hp_direct(table, p)
    hp_star = is_hp_star_direct(table, p)
    ti = watch.run("abelian_ti_sylow", lambda: has_abelian_ti_sylow(G, p))
    cases_a = watch.run("theorem_a", lambda: theorem_a_classify(G, p))
    cases_c = corollary_c_classify(G, p, cases_a)

    report = ClassificationReport(
        group_id=group_id,
        p=p,
        direct_hp=hp.holds,
        direct_hp_star=hp_star.holds,
        abelian_ti_sylow=ti,
        theorem_a_cases=_sorted_labels(cases_a, CASE_LABELS_A),
        corollary_c_cases=_sorted_labels(cases_c, CASE_LABELS_C),
        witnesses={
            "direct_hp": hp.witness,
            "direct_hp_star": hp_star.witness,
            "cases_a": cases_a,
            "orders": {"G": G.order, "N": p_residual(G, p).order, "sylow": sylow_subgroup(G, p).order},
        },
        gcd_set=table.gcd_set(),
        timings=watch.timings,
    )
    _assert_report(G, p, table, report)
    return report


def _assert_report(G: PermGroup, p: int, table: CharacterTable, report: ClassificationReport) -> None:
    sides = {
        "direct_hp": report.direct_hp,
        "direct_hp_star": report.direct_hp_star,
        "abelian_ti_sylow": report.abelian_ti_sylow,
        "theorem_a_cases": report.theorem_a_cases,
        "corollary_c_cases": report.corollary_c_cases,
    }
    where = f"{report.group_id} p={p}"
    if report.direct_hp != bool(report.theorem_a_cases):
        raise BiconditionalViolation(f"{where}: H_p 直接判定与结构分类不一致", sides)
    if not report.direct_hp_star == report.abelian_ti_sylow == bool(report.corollary_c_cases):
        raise BiconditionalViolation(f"{where}: H_p* / 交换 T.I. Sylow / 推论情形 不一致", sides)
    if report.direct_hp_star and not report.direct_hp:
        raise BiconditionalViolation(f"{where}: H_p* 但不是 H_p", sides)
    gcd_ok = all(g % p for g in report.gcd_set)
    if gcd_ok != report.direct_hp:
        raise BiconditionalViolation(f"{where}: GCD(G) 的 p-部分与 H_p 判定不一致", sides)

    if G.order % p == 0 and not any(c % p == 0 for c in table.codegrees):
        raise InvariantViolation(f"{where}: p 整除 |G| 但没有余次数被 p 整除")
    if "2" in report.theorem_a_cases:
        ctx = StructuralContext(G, p)
        if not is_solvable(ctx.derived_N) and ctx.sylow_N.order != p:
            raise InvariantViolation(f"{where}: 情形 (2) 且 N' 不可解，但 |P| = {ctx.sylow_N.order} != p")
    if p > 2 and is_nonabelian_simple(G):
        P = sylow_subgroup(G, p)
        if P.order > 1 and is_cyclic(P):
            if not is_ti_subgroup(G, P):
                raise InvariantViolation(f"{where}: 单群的循环 Sylow 子群不是 T.I.")
            if not report.direct_hp:
                raise InvariantViolation(f"{where}: 具有循环 Sylow 的单群不是 H_p")


# ---- 遗传性质 ----

@dataclass
class HereditaryResult:
    checked: List[str] = field(default_factory=list)


def _inflated_pairs(G: PermGroup, M: PermGroup) -> List[Tuple[int, int]]:
    table = dixon_schneider(G)
    meets = classes_meeting(conjugacy_classes(G), M)
    return sorted((d, c) for d, c, ker in zip(table.degrees, table.codegrees, table.kernels) if meets <= ker)


def hereditary_checks(G: PermGroup, p: int) -> HereditaryResult:
    """商群仍是 H_p；O_p > 1 时 [O_{p'}, O^{p'}] = 1 且 G/O_p 有交换 Sylow；次正规 p-子群交换"""
    table = dixon_schneider(G)
    if not is_hp_direct(table, p).holds:
        raise PreconditionError("遗传检查要求 G 是 H_p 群")
    result = HereditaryResult()

    for M in normal_subgroups_from_classes(G):
        if M.order in (1, G.order):
            continue
        Q, _ = quotient(G, M)
        q_table = dixon_schneider(Q)
        if not is_hp_direct(q_table, p).holds:
            raise InvariantViolation(f"商群 G/M (|M|={M.order}) 不是 H_{p}")
        inflated = _inflated_pairs(G, M)
        own = sorted(zip(q_table.degrees, q_table.codegrees))
        if inflated != own:
            raise InvariantViolation(f"G/M (|M|={M.order}) 的 (次数, 余次数) 与膨胀特征标不符")
        result.checked.append(f"quotient:{M.order}")

    O_p = p_core(G, p)
    if O_p.order > 1:
        if not commute(p_prime_core(G, p), p_residual(G, p)):
            raise InvariantViolation("[O_p'(G), O^p'(G)] != 1")
        Q, _ = quotient(G, O_p)
        if not sylow_subgroup(Q, p).is_abelian():
            raise InvariantViolation("G/O_p(G) 的 Sylow 子群不交换")
        result.checked.append("core-commutator")
        result.checked.append("quotient-sylow-abelian")

    cores = [O_p, p_core(p_residual(G, p), p)]
    cores += [p_core(M, p) for M in normal_subgroups_from_classes(G)]
    for C in cores:
        if not C.is_abelian():
            raise InvariantViolation(f"次正规 p-子群 (|C|={C.order}) 不交换")
    result.checked.append(f"subnormal-cores:{len(cores)}")
    return result
