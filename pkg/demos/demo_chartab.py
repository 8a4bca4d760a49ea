from __future__ import annotations

try:
    from codeglab.algo import build_builtin, cross_check, dixon_schneider
except ModuleNotFoundError:
    import sys
    from pathlib import Path

    project_root = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(project_root))
    from codeglab.algo import build_builtin, cross_check, dixon_schneider


def run_demo(spec: str = "symmetric:4") -> None:
    G = build_builtin(spec)
    table = dixon_schneider(G)
    print(f"{spec}: |G| = {G.order}, classes = {table.count}, exponent = {table.exponent}, ell = {table.lifting_prime}")
    print("class sizes:", table.class_sizes)
    for i, (d, cod) in enumerate(zip(table.degrees, table.codegrees)):
        print(f"  chi_{i}: degree {d:>3}  codegree {cod:>4}  kernel classes {sorted(table.kernels[i])}")
    print("GCD(G) =", table.gcd_set())

    for p in (2, 3):
        report = cross_check(G, p, spec)
        print(f"p={p}: H_p={report.direct_hp} H_p*={report.direct_hp_star} cases={report.theorem_a_cases}")


if __name__ == "__main__":
    run_demo()
