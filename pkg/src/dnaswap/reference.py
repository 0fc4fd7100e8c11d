"""Frozen reference data the protocol output is verified against.

The A.T ensemble collapses to four outcome classes whose exact
probabilities are (2 +/- sqrt 2)/8 and whose third bonded pair is |10>;
the G.C ensemble has four rows per (j, m) group. Amplitudes and
probabilities below are the two-decimal reference values; comparisons
happen after the same phase normalization that ``canonical_table`` applies
(a real and >= 0, falling back to b when a vanishes).
"""
from __future__ import annotations

import math

REFERENCE_VERSION = "1"

# Tolerances: the reference tables carry two decimals; exact invariants
# (class probabilities, group sums) are checked tight.
COARSE_TOL = 0.01
EXACT_TOL = 1e-10

GROUPS = ((0, 0), (0, 1), (1, 0), (1, 1))

AT_CLASS_P = {(0, 0): 0.43, (0, 1): 0.07, (1, 0): 0.07, (1, 1): 0.43}
AT_CLASS_P_EXACT = {
    (0, 0): (2.0 + math.sqrt(2.0)) / 8.0,
    (0, 1): (2.0 - math.sqrt(2.0)) / 8.0,
    (1, 0): (2.0 - math.sqrt(2.0)) / 8.0,
    (1, 1): (2.0 + math.sqrt(2.0)) / 8.0,
}
AT_THIRD_PAIR = (0.0, 1.0)

# G.C reference rows per group: (a, b, P), rank order = descending P.
GC_TABLE = {
    (0, 0): (
        (+0.51, -0.86, 0.11),
        (+0.38, +0.92, 0.09),
        (+0.96, -0.28, 0.03),
        (-0.92, +0.38, 0.02),
    ),
    (1, 0): (
        (-0.51, +0.86, 0.11),
        (-0.38, -0.92, 0.09),
        (-0.96, +0.28, 0.03),
        (+0.92, -0.38, 0.02),
    ),
    (0, 1): (
        (+0.51, +0.86, 0.11),
        (+0.38, -0.92, 0.09),
        (-0.96, -0.28, 0.03),
        (+0.92, +0.38, 0.02),
    ),
    (1, 1): (
        (+0.51, +0.86, 0.11),
        (+0.38, -0.92, 0.09),
        (-0.96, -0.28, 0.03),
        (+0.92, +0.38, 0.02),
    ),
}


def _normalize(a: float, b: float) -> tuple[float, float]:
    if a < 0 or (a == 0 and b < 0):
        return -a, -b
    return a, b


def gc_normalized_rows(group: tuple[int, int]) -> list[tuple[float, float, float]]:
    """Reference rows of one group after phase normalization."""
    return [(*_normalize(a, b), p) for a, b, p in GC_TABLE[group]]


def dump() -> dict:
    """JSON-ready copy of the embedded reference data."""
    return {
        "version": REFERENCE_VERSION,
        "tolerances": {"coarse": COARSE_TOL, "exact": EXACT_TOL},
        "at": {
            "third_pair": list(AT_THIRD_PAIR),
            "classes": [
                {
                    "group": f"{j}{m}",
                    "p": AT_CLASS_P[(j, m)],
                    "p_exact": AT_CLASS_P_EXACT[(j, m)],
                }
                for j, m in GROUPS
            ],
        },
        "gc": {
            "rows": [
                {"group": f"{j}{m}", "rank": rank, "a": a, "b": b, "p": p}
                for j, m in GROUPS
                for rank, (a, b, p) in enumerate(GC_TABLE[(j, m)], start=1)
            ],
        },
    }
