#!/usr/bin/env python3
"""
Golden generator: rebuild the BeanHelper fragment files deterministically.

Usage:
  python tools/gen_golden.py              # rebuild all cases
  python tools/gen_golden.py --case NAME  # rebuild just one case (file stem)
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from schema_scaffold.cli.main import run  # noqa: E402

TESTS_ROOT = Path(__file__).parent.parent / "tests"
GOLDEN_ROOT = TESTS_ROOT / "golden"
FIXTURES_ROOT = TESTS_ROOT / "fixtures"

# Environment is empty so host SCAFFOLD_* variables cannot leak into goldens
CASES = {
    "table_a": ["beanhelper", "table_a", "field_aa", "field_nn"],
    "language": ["beanhelper", "--schema", str(FIXTURES_ROOT / "language.schema")],
}


def rebuild_case(case_name: str) -> None:
    if case_name not in CASES:
        raise KeyError(f"Unknown golden case '{case_name}'")

    result = run(CASES[case_name], environ={})
    if result.exit_code != 0:
        raise RuntimeError(f"beanhelper failed for {case_name}: {result.stderr}")

    target = GOLDEN_ROOT / f"{case_name}.fragments"
    target.write_text(result.stdout, encoding="utf-8")
    print(f"Rebuilt golden for case: {case_name}")


def main() -> None:
    parser = argparse.ArgumentParser(description="Rebuild golden fragment files")
    parser.add_argument(
        "--case", dest="case", help="Specific case name to rebuild", default=None
    )
    args = parser.parse_args()

    if args.case:
        rebuild_case(args.case)
        return

    for name in sorted(CASES):
        rebuild_case(name)


if __name__ == "__main__":
    main()
