from __future__ import annotations

import argparse
from pathlib import Path

try:
    from codeglab.algo import build_builtin, serialize_group
except ModuleNotFoundError:
    import sys

    project_root = Path(__file__).resolve().parents[1]
    sys.path.insert(0, str(project_root))
    from codeglab.algo import build_builtin, serialize_group

# 仿射模群：作为 .pgr 导出后可用 --file 重新载入
EXPORTS = {
    "sl2_5_on_f3_4.pgr": "sl2_5_module",
    "asl2_4.pgr": "asl2:4",
    "asl2_5.pgr": "asl2:5",
}


def run_demo(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for filename, spec in EXPORTS.items():
        G = build_builtin(spec)
        text = serialize_group(G, [("order", str(G.order))])
        (out_dir / filename).write_text(text, encoding="utf-8")
        print(f"{spec} -> {out_dir / filename} (degree {G.degree}, order {G.order})")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Export the affine module groups to .pgr files.")
    parser.add_argument("--out-dir", default="exports", help="Target directory (default: exports)")
    run_demo(Path(parser.parse_args().out_dir))
