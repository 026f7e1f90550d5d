#!/usr/bin/env python3
"""Time the prime-coordinate surface scan across bounds and worker counts.

Used to pick the chunking strategy (round-robin over the leading
coordinate) and to sanity-check that the point counts are independent of
the worker count.  Typical output on the 4-core dev box -- the divisor
enumeration is cheap enough that forking only starts to pay off beyond
B of a few hundred:

    B=  50  threads=1     0.6s   points=4775
    B=  50  threads=4     0.7s   points=4775
    B= 200  threads=1     7.8s   points=24155
    B= 200  threads=4     7.5s   points=24155
"""

import argparse
import time

from icotk.fermat import scan_surface


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bounds", default="50,100,200",
                    help="comma-separated scan bounds")
    ap.add_argument("--threads", default="1,4",
                    help="comma-separated worker counts")
    args = ap.parse_args()

    counts = {}
    for B in (int(b) for b in args.bounds.split(",")):
        for T in (int(t) for t in args.threads.split(",")):
            t0 = time.perf_counter()
            rep = scan_surface(B, threads=T)
            dt = time.perf_counter() - t0
            print(f"B={B:4d}  threads={T}  {dt:6.1f}s   points={len(rep.points)}")
            if counts.setdefault(B, len(rep.points)) != len(rep.points):
                raise SystemExit(f"point count at B={B} depends on threads")


if __name__ == "__main__":
    main()
