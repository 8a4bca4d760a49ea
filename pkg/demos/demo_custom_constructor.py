from __future__ import annotations

from sympy import primitive_root

try:
    from codeglab.algo import Permutation, PermGroup, build_builtin, cross_check, group_constructor
except ModuleNotFoundError:
    import sys
    from pathlib import Path

    project_root = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(project_root))
    from codeglab.algo import Permutation, PermGroup, build_builtin, cross_check, group_constructor


@group_constructor("affine_line")
def affine_line(p: int) -> PermGroup:
    """示例构造器：F_p 上的 x ↦ ax + b，阶 p(p-1)"""
    translation = Permutation([(x + 1) % p for x in range(p)])
    generator = primitive_root(p)
    scaling = Permutation([(generator * x) % p for x in range(p)])
    return PermGroup(p, [translation, scaling])


def run_demo() -> None:
    G = build_builtin("affine_line:5")
    print(f"affine_line:5 has order {G.order}")
    for p in (2, 5):
        report = cross_check(G, p, "affine_line:5")
        print(f"p={p}: H_p={report.direct_hp} cases_a={report.theorem_a_cases} cases_c={report.corollary_c_cases}")


if __name__ == "__main__":
    run_demo()
