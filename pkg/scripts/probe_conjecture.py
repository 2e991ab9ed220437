"""Push the (0,0,0,2,2,2) probe in exact slow 3-Nim to larger caps.

    python scripts/probe_conjecture.py 12 14 16
"""
import sys

from slownim.shifts import conjecture_probe_63

for cap in [int(a) for a in sys.argv[1:]] or [12]:
    print(f"cap {cap}")
    for report in conjecture_probe_63(cap):
        print("  " + report.summary())
