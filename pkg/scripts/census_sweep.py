"""Critical census of J_d against the closed forms, over a range of degrees."""
import argparse
import json
import time

from belyisurf.deltoid import CensusMismatchError, census_closed_form, critical_profile_J
from belyisurf.solvekit import PrecisionContext


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmin", type=int, default=3)
    ap.add_argument("--dmax", type=int, default=12)
    ap.add_argument("--bits", type=int, default=256)
    ap.add_argument("--json", help="write the rows here")
    args = ap.parse_args()

    ctx = PrecisionContext(args.bits)
    rows = []
    for d in range(args.dmin, args.dmax + 1):
        t0 = time.perf_counter()
        try:
            c = critical_profile_J(d, ctx)
            got, strategy, ok = c.as_int_keys(), c.strategy, True
        except CensusMismatchError as exc:
            got, strategy, ok = None, str(exc), False
        dt = time.perf_counter() - t0
        want = census_closed_form(d)
        rows.append({"d": d, "found": got, "expected": want, "ok": ok, "strategy": strategy, "seconds": round(dt, 2)})
        print(f"d={d:3d}  {got}  expected {want}  {'ok' if ok else 'MISMATCH'}  [{strategy}, {dt:.1f} s]", flush=True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
