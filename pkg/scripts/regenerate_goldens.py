#!/usr/bin/env python3
"""Regenerate the golden transcripts for the routing scenarios.

Run from the repo root after an intentional behaviour change, review the
diff, and commit the updated files:

    python scripts/regenerate_goldens.py
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO_ROOT / "tests"))

from socialbot.gateway.simulate import simulate  # noqa: E402

from routing_scripts import SCRIPTS  # noqa: E402

GOLDEN_DIR = REPO_ROOT / "tests" / "goldens"


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name, (script, seed) in SCRIPTS.items():
        report = simulate(script, seed=seed)
        if report.errors:
            print(f"{name}: simulation errored: {report.errors}", file=sys.stderr)
            return 1
        path = GOLDEN_DIR / f"{name}.json"
        path.write_text(report.to_json(), encoding="utf-8")
        print(f"wrote {path} ({len(report.turns)} turns)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
