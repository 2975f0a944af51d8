#!/usr/bin/env python3
"""Run every figure preset and write its CSV, printing the design trend
each one demonstrates.

Run:  python3 demos/figure_sweeps.py [output-dir]   (about 20 seconds)
"""

import math
import sys
from pathlib import Path

from jpocoupler import circuit
from jpocoupler.sweep import PRESETS, preset_spec, run_sweep, write_csv

TWO_PI = 2.0 * math.pi


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("sweep_out")
    out_dir.mkdir(parents=True, exist_ok=True)

    base = circuit.make_params(
        C_J=500e-15, C=0.5e-15, C_g=100e-15, n=1, alpha=0.0,
        omega=TWO_PI * 10e9, Omega=TWO_PI * 20e6,
    )

    print("Presets:", ", ".join(sorted(PRESETS)))
    print()

    print("=== fig2a: coupling vs coupler shunt capacitance ===")
    rows = run_sweep(preset_spec("fig2a", base))
    write_csv(out_dir / "fig2a.csv", preset_spec("fig2a", base), rows,
              preset="fig2a")
    first, last = rows[0], rows[-1]
    print(f"  C_g = {first.axis_value * 1e15:5.0f} fF -> gamma4/2pi = "
          f"{first.gamma4_over_2pi / 1e6:6.3f} MHz")
    print(f"  C_g = {last.axis_value * 1e15:5.0f} fF -> gamma4/2pi = "
          f"{last.gamma4_over_2pi / 1e6:6.3f} MHz")
    decreasing = all(a.gamma4_over_2pi > b.gamma4_over_2pi
                     for a, b in zip(rows, rows[1:]))
    print(f"  strictly decreasing: {decreasing}")
    print("  Larger shunts dilute the coupler nonlinearity faster than")
    print("  they improve hybridization, so smaller C_g wins.")

    print("\n=== fig2b: coupling vs bare coupler frequency ===")
    spec = preset_spec("fig2b", base)
    rows = run_sweep(spec)
    write_csv(out_dir / "fig2b.csv", spec, rows, preset="fig2b")
    finite = [r for r in rows if math.isfinite(r.gamma4_over_2pi)]
    peak = max(finite, key=lambda r: abs(r.gamma4_over_2pi))
    print(f"  {len(rows)} rows, {len(rows) - len(finite)} flagged; peak "
          f"|gamma4|/2pi = {abs(peak.gamma4_over_2pi) / 1e6:.2f} MHz at "
          f"omega_-/2pi = {peak.axis_value / TWO_PI / 1e9:.4f} GHz")
    print("  The coupling diverges toward the hybridization resonance;")
    print("  the working point sits safely detuned from it.")

    print("\n=== fig2c: coupling vs oscillator frequency ===")
    spec = preset_spec("fig2c", base)
    rows = run_sweep(spec)
    write_csv(out_dir / "fig2c.csv", spec, rows, preset="fig2c")
    finite = [r for r in rows if math.isfinite(r.gamma4_over_2pi)]
    print(f"  {len(rows)} rows, {len(rows) - len(finite)} flagged; same "
          "resonance seen from the oscillator side.")

    print("\n=== fig3a/fig3b: coupler design space (alpha, n) ===")
    spec = preset_spec("fig3a", base)
    rows = run_sweep(spec)
    write_csv(out_dir / "fig3a.csv", spec, rows, preset="fig3a")
    spec_b = preset_spec("fig3b", base)
    write_csv(out_dir / "fig3b.csv", spec_b, run_sweep(spec_b),
              preset="fig3b")
    by_n: dict[int, list] = {}
    for r in rows:
        by_n.setdefault(r.n, []).append(r)
    print("  gamma4 changes sign where the coupler's quartic")
    print("  nonlinearity does, at alpha = n^-3:")
    for n, series in sorted(by_n.items()):
        finite = [(r.axis_value, r.gamma4_over_2pi) for r in series
                  if math.isfinite(r.gamma4_over_2pi)]
        flips = [(finite[i][0], finite[i + 1][0])
                 for i in range(len(finite) - 1)
                 if (finite[i][1] > 0) != (finite[i + 1][1] > 0)]
        peak = max(abs(v) for _, v in finite)
        if flips:
            lo, hi = flips[0]
            print(f"  n = {n:2d}: sign change in [{lo:.4f}, {hi:.4f}] "
                  f"(n^-3 = {n ** -3:.4f}); max |gamma4|/2pi = "
                  f"{peak / 1e6:7.3f} MHz")
        else:
            spread = (max(v for _, v in finite)
                      - min(v for _, v in finite)) / peak
            print(f"  n = {n:2d}: no sign change - the single-junction "
                  f"coupler is alpha-independent (spread {spread:.1e})")
    flagged = sum(1 for r in rows if r.flags)
    print(f"  {flagged} of {len(rows)} rows flagged (poles, unsolvable "
          "points) rather than silently skipped.")

    print(f"\nCSV files written to {out_dir}/ - reruns are byte-identical.")


if __name__ == "__main__":
    main()
