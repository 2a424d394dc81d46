"""Run the acceptance criteria outside pytest and print one line each.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 1 4 9      # a subset
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from test_acceptance import CRITERIA  # noqa: E402


def main(argv):
    picked = [int(a) for a in argv] or sorted(CRITERIA)
    failed = 0
    for k in picked:
        ok, detail = CRITERIA[k]()
        print(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}", flush=True)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
