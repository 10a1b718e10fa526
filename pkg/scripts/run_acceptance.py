#!/usr/bin/env python3
"""
Acceptance Run Script for the OU Impact Verifier

Runs every command against its example run document and summarizes the
exit codes. Reports land in --out-dir (default: reports/).
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path

REPO_DIR = Path(__file__).resolve().parent.parent
EXAMPLES = REPO_DIR / "config" / "examples"

RUNS = [
    ("value", "value.json"),
    ("oracles", "oracles.json"),
    ("limits", "limits.json"),
    ("montecarlo", "montecarlo_zero.json"),
    ("montecarlo", "montecarlo.json"),
]

OUTCOMES = {0: "✅ pass", 1: "❌ invalid input", 2: "⚠️  acceptance failed", 3: "❌ internal error"}


def print_header(skip_desk: bool):
    print("🚀 OU Impact Verifier - Acceptance Run")
    print("=" * 50)
    if skip_desk:
        print("Skipping the desk-scale Monte Carlo run (--quick)")
    print()


def check_python_version() -> bool:
    if sys.version_info < (3, 8):
        print("❌ Python 3.8+ is required")
        print(f"   Your version: {sys.version}")
        return False
    return True


def check_dependencies() -> bool:
    try:
        import numba  # noqa: F401
        import numpy  # noqa: F401
        import scipy  # noqa: F401
        import structlog  # noqa: F401
    except ImportError as e:
        print(f"❌ Missing dependency: {e.name}")
        print("   Install with: pip install -r requirements.txt")
        return False
    print("✅ Core dependencies available")
    return True


def run_command(command: str, document: str, out_dir: Path) -> int:
    out = out_dir / f"{Path(document).stem}.json"
    print(f"\n▶️  {command} ({document})")
    result = subprocess.run(
        [sys.executable, "-m", "src.main", command, "--config", str(EXAMPLES / document), "--out", str(out)],
        cwd=out_dir,
        env={**os.environ, "PYTHONPATH": str(REPO_DIR)},
        stdout=subprocess.DEVNULL,
        stderr=subprocess.PIPE,
        text=True,
    )
    print(f"   {OUTCOMES.get(result.returncode, f'exit {result.returncode}')} -> {out.name}")
    if result.returncode not in (0, 2) and result.stderr:
        print("   " + result.stderr.strip().splitlines()[-1])
    return result.returncode


def main() -> int:
    parser = argparse.ArgumentParser(description="Run every verifier command on its example document")
    parser.add_argument("--out-dir", type=Path, default=REPO_DIR / "reports")
    parser.add_argument("--quick", action="store_true", help="skip the 200000-path Monte Carlo run")
    args = parser.parse_args()

    try:
        print_header(args.quick)
        if not check_python_version() or not check_dependencies():
            return 1

        args.out_dir.mkdir(parents=True, exist_ok=True)
        runs = [r for r in RUNS if not (args.quick and r[1] == "montecarlo.json")]
        codes = [run_command(command, document, args.out_dir) for command, document in runs]

        print("\n📊 Summary")
        print("=" * 30)
        for (command, document), code in zip(runs, codes):
            print(f"   {command:<11} {document:<22} {OUTCOMES.get(code, code)}")
        return max(codes)

    except KeyboardInterrupt:
        print("\n\n🛑 Run interrupted by user")
        return 1


if __name__ == "__main__":
    sys.exit(main())
