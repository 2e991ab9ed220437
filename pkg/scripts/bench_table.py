"""Timing of the retrograde table build against the number of states."""
import sys
import time

import numpy as np

from slownim.engine import build_table, count_positions
from slownim.game import GameSpec

threads = int(sys.argv[1]) if len(sys.argv) > 1 else 1
spec = GameSpec(6, 2)
for cap in (8, 12, 16, 20, 24):
    start = time.perf_counter()
    table = build_table(spec, cap, threads=threads)
    elapsed = time.perf_counter() - start
    zeros = int((table.values == 0).sum())
    print(f"cap={cap:2d} states={count_positions(6, cap):8d} P={zeros:7d} max_sg={int(np.max(table.values))} {elapsed:.2f}s")
