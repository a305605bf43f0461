"""生成验收语料"""

import argparse
import sys
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from setgrad_leibniz.commands import generate_corpus  # noqa: E402
from setgrad_leibniz.utils.config import get_settings  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description="写出带种子的代数语料")
    parser.add_argument("out_dir", nargs="?", default="corpus")
    parser.add_argument("--seed", type=int, default=None)
    args = parser.parse_args()
    seed = get_settings().corpus_seed if args.seed is None else args.seed

    print("🧮 set-graded Leibniz 语料生成工具")
    print("=" * 50)
    print(f"📁 输出目录: {Path(args.out_dir).absolute()}")
    print(f"🎲 种子: {seed}")
    print("=" * 50)
    report = generate_corpus(args.out_dir, seed)
    if not report["success"]:
        print(f"❌ 生成失败: {report['detail']}")
        sys.exit(report["exit_code"])
    counts: dict[str, int] = {}
    for item in report["results"]["instances"]:
        counts[item["family"]] = counts.get(item["family"], 0) + 1
    for family, count in sorted(counts.items()):
        print(f"    - {family}: {count}")
    print(f"✅ 共写出 {report['results']['count']} 个实例")


if __name__ == "__main__":
    main()
