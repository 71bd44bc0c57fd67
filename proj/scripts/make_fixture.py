#!/usr/bin/env python3
"""Write the small REMS-style telemetry table used by the pipeline tests."""
import math
import random
import sys

rng = random.Random(20261019)
out = sys.argv[1] if len(sys.argv) > 1 else "tests/data/rems_fixture.csv"

# Runs of 1 Hz samples separated by gaps: 700 + 40 (too short) + 520.
runs = [(1000.0, 700), (1760.0, 40), (1830.0, 520)]
cols = ["SCLK", "ATS1_TIP", "ATS1_MID", "ATS1_BASE", "ATS2_TIP", "ATS2_MID", "ATS2_BASE", "T1_AMB", "T2_AMB"]

with open(out, "w") as f:
    f.write(",".join(cols) + "\n")
    row = 0
    for start, n in runs:
        for i in range(n):
            t = start + i
            base = 215.0 + 12.0 * math.sin(2 * math.pi * t / 3000.0)
            vals = []
            for k in range(8):
                offset = 0.3 * k - 1.0
                vals.append(base + offset + rng.gauss(0.0, 0.06))
            fields = [f"{t:.1f}"] + [f"{v:.5f}" for v in vals]
            # A few fill values and one unparseable field.
            if row in (50, 51, 52, 300, 1000):
                fields[1] = "9999.0"
            if row == 120:
                fields[4] = ""
            if row == 610:
                fields[2] = "n/a"
            f.write(",".join(fields) + "\n")
            row += 1
