"""One call from problem data to a verified three-solution report.

Runs the P1 preset end to end: hypothesis validation, both minimizations,
the path search, and every check (bounds, positivity, distinctness,
Morse comparison).  The square preset works the same way and takes a
couple of minutes:  build_preset("p2-square").

Run with:  python demos/06_full_pipeline.py
"""

from trisol import build_preset, run_pipeline

spec, nl = build_preset("p1-interval")
report = run_pipeline(spec, nl, preset="p1-interval")

print("points:")
for point in report.points:
    print(f"  {point.classification.value:12s} energy {point.energy:+10.4f}"
          f"  residual {point.residual:.2e}  Morse index {point.morse_index}")

print("\nflags:")
for name, ok in report.flags.items():
    print(f"  {name:22s} {'pass' if ok else 'FAIL'}")

print(f"\nMorse comparison: {report.morse_comparison}")
print(f"all checks passed: {report.all_ok}")
for note in report.notes:
    print(f"note: {note}")
