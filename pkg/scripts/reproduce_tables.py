"""Regenerate every rate table, the norm table and the figure data under one directory."""

import argparse
import sys
from pathlib import Path

from pentabeam.cli import TABLE_CHOICES, main


def run(out_dir: Path) -> int:
    for which in TABLE_CHOICES:
        code = main(["tables", which, "--out-dir", str(out_dir)])
        if code:
            return code
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    sys.exit(run(ap.parse_args().out_dir))
