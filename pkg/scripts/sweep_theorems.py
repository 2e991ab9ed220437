"""Formula-vs-oracle sweeps for every closed form, at configurable caps.

    python scripts/sweep_theorems.py --cap6 18 --cap5 24
"""
import argparse
import time

from slownim.cli import verify_theorem

parser = argparse.ArgumentParser()
parser.add_argument("--cap6", type=int, default=16)
parser.add_argument("--cap5", type=int, default=20)
parser.add_argument("--cap-moore", type=int, default=10)
parser.add_argument("--threads", type=int, default=1)
args = parser.parse_args()

caps = {"t6": args.cap6, "t6odd": args.cap6, "c5even": args.cap5, "c5odd": args.cap5, "remark1": args.cap_moore}
for tid, cap in caps.items():
    start = time.perf_counter()
    checked, bad, first = verify_theorem(tid, cap, args.threads)
    print(f"{tid:8s} cap={cap:3d} checked={checked:8d} mismatches={bad} ({time.perf_counter() - start:.1f}s)")
    if first:
        print("  first mismatch:", first)
