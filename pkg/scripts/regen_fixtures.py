"""Rewrite fixtures/expected/ from the current CLI.

Run after an intentional output change, then review the diff before committing.
"""

import io
import json
import os
from pathlib import Path

from ordrep.cli import run

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    cases = json.loads((ROOT / "cases.json").read_text())
    expected = ROOT / "expected"
    expected.mkdir(exist_ok=True)
    os.chdir(ROOT)
    for case in cases:
        out, err = io.StringIO(), io.StringIO()
        code = run(case["argv"], stdout=out, stderr=err)
        status = "ok" if code == case["exit"] else f"EXIT {code} != {case['exit']}"
        (expected / f"{case['name']}.out").write_text(out.getvalue())
        print(f"{case['name']:28s} {status}")


if __name__ == "__main__":
    main()
