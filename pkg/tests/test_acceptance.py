"""Acceptance criteria, one test each.

Every test runs the matching suite from ``weakclifford.verify`` with the
parameters pinned below and records a one-line verdict, printed in the
terminal summary (and to stdout when run with ``-s``).
"""
import time
from fractions import Fraction

import pytest

from weakclifford.verify import run_suite

HALF = Fraction(1, 2)

# number -> (title, suite, options, time budget in seconds, tolerance note)
CRITERIA = {
    1: ("multipole properties, k <= 4, all index words", "multipoles", {"kmax": 4}, 60, "exact"),
    2: ("strong Clifford spin-1/2 structure", "clifford-spin-half", {}, 30, "exact"),
    3: ("f-constraint family (k, -k, 0); 20 random triples fail", "f-constraint", {"cases": 20, "seed": 0}, 60,
        "exact"),
    4: ("reflection identities, 200 draws x 3 signatures", "reflections", {"cases": 200, "seed": 0}, 60, "exact"),
    5: ("spinless weak algebra at D=6, H=2 with audit", "spinless-weak", {"D": 6, "H": 2}, 300, "exact"),
    6: ("spin-s weak algebras, s = 1/2 (D=6) and s = 1 (D=8)", "spin-weak", {"spins": (HALF, 1)}, 900, "exact"),
    7: ("g_Lambda values and Mon identities", "metric", {}, 30, "exact"),
    8: ("spin-0 symmetric algebra", "spin-zero", {}, 10, "exact"),
    9: ("numeric spin oracle, s = 0 .. 3", "rep", {}, 60,
        "vanishing < 1e-9, survival > 1e-6, rank threshold 1e-9"),
    10: ("symbolic reduce vs spin matrices, 50 expressions, s = 1/2, 1", "cross-oracle",
         {"cases": 50, "seed": 0, "spins": (HALF, 1)}, 300, "residual < 1e-9"),
}

VERDICTS: dict[int, str] = {}


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion{n:02d}")
def test_acceptance(number):
    title, suite, options, budget, tolerance = CRITERIA[number]
    t0 = time.perf_counter()
    checks = run_suite(suite, **options)
    elapsed = time.perf_counter() - t0
    failed = [c for c in checks if not c.passed]
    ok = not failed and elapsed < budget
    line = (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title} "
            f"[{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.1f}s of {budget}s, {tolerance}]")
    VERDICTS[number] = line
    print(line)
    assert not failed, "\n".join(f"{c.name}: {c.value}" for c in failed)
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
