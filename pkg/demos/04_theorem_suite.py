"""Run the full implication suite across the corpus and tally statuses.

Every report is one implication evaluated on one instance.  A violation
would mean the engine found a counterexample to a statement the test suite
treats as settled, so the expected tally here has no violation column.
"""

import time

from spbw import corpus
from spbw.cli import parse_instance
from spbw.properties import theorem_suite


def main():
    grand = {}
    t0 = time.monotonic()
    for name in corpus.names():
        inst = parse_instance(corpus.load(name))
        reports = theorem_suite(inst.module, inst.presentation, degree=2,
                                embedding=inst.embedding)
        counts = {}
        for r in reports:
            counts[r.status] = counts.get(r.status, 0) + 1
            grand[r.status] = grand.get(r.status, 0) + 1
        tally = ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))
        print(f"{name:22s} {tally}")
        for r in reports:
            if r.status == "violation":
                print(f"  VIOLATION {r.theorem}: {r.witness}")
    elapsed = time.monotonic() - t0
    print()
    total = sum(grand.values())
    print(f"{total} reports in {elapsed:.2f}s:",
          ", ".join(f"{k} {v}" for k, v in sorted(grand.items())))


if __name__ == "__main__":
    main()
