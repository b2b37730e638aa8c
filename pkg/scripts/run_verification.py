"""
Run Verification Suite

Wrapper script to run one verification suite from a source checkout.

Usage:
    python scripts/run_verification.py geometry
    python scripts/run_verification.py box-identity --n 2 --out report.json
"""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from funcval.main import main


if __name__ == "__main__":
    print("=" * 60, file=sys.stderr)
    print("funcval - Verification Suite", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print(file=sys.stderr)

    if len(sys.argv) < 2:
        print("Usage: python scripts/run_verification.py <suite> [options]", file=sys.stderr)
        sys.exit(2)

    sys.exit(main(["verify"] + sys.argv[1:]))
