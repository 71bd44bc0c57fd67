#!/usr/bin/env python3
"""Regenerate src/wavelet_tables.cpp from PyWavelets' scaling filters.

Only needed when the shipped table set changes. The C++ side validates the
tables (sum, energy, even-shift orthogonality) in its unit tests.
"""
import sys

import pywt

FAMILIES = [("coif", "Coiflet", range(1, 6)),
            ("db", "Daubechies", range(1, 11)),
            ("sym", "Symlet", range(2, 11))]


def main(out):
    lines = [
        "// Generated by scripts/gen_wavelet_tables.py. Do not edit.",
        "",
        '#include "wavelet_tables.hpp"',
        "",
        "namespace ats::detail {",
        "namespace {",
        "",
    ]
    entries = []
    for short, family, orders in FAMILIES:
        for order in orders:
            h = pywt.Wavelet(f"{short}{order}").rec_lo
            name = f"k{family}{order}"
            lines.append(f"constexpr double {name}[] = {{")
            for v in h:
                lines.append(f"    {v!r},")
            lines.append("};")
            entries.append(f"    {{WaveletFamily::{family.lower()}, {order}, {name}}},")
    lines += ["", "}  // namespace", "",
              "std::span<const ScalingFilterEntry> scaling_filter_table() {",
              "  static const ScalingFilterEntry table[] = {"]
    lines += ["  " + e for e in entries]
    lines += ["  };", "  return table;", "}", "", "}  // namespace ats::detail", ""]
    with open(out, "w") as f:
        f.write("\n".join(lines))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/wavelet_tables.cpp")
