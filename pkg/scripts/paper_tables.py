"""Lower-bound and count formula tables for the tree families."""
import argparse

from belyisurf.belyi import iter_signatures
from belyisurf.singular import (
    bound_eq11,
    bound_eq12,
    bound_eq13,
    extra_eps_count,
    improvement_delta,
    labs_count,
    predicted_count_eq37,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mmax", type=int, default=6)
    ap.add_argument("--dmax", type=int, default=36)
    args = ap.parse_args()

    print(f"{'m':>3} {'d':>4} {'nodal':>8} {'cusps':>8} {'A_(3m+1)':>9}")
    for m in range(1, args.mmax + 1):
        print(f"{m:3d} {3 * m:4d} {bound_eq11(m):8d} {bound_eq12(m):8d} {bound_eq13(m):9d}")
    print()
    print(f"{'signature':<22} {'d':>4} {'nu':>3} {'eps':>3} {'s':>3} {'A_nu':>7} {'A_eps':>6} {'labs':>7} {'delta':>5}")
    for sig in sorted(iter_signatures(args.dmax), key=lambda s: (s.d, s.label)):
        if sig.d % 3:
            continue
        eps = extra_eps_count(sig.d, sig.eps) if sig.eps and sig.eps != sig.nu else 0
        print(
            f"{sig.label:<22} {sig.d:4d} {sig.nu:3d} {sig.eps:3d} {sig.s:3d} "
            f"{predicted_count_eq37(sig.d, sig.s):7d} {eps:6d} {labs_count(sig.d, sig.nu):7d} "
            f"{improvement_delta(sig.d, sig.nu, sig.s):5d}"
        )


if __name__ == "__main__":
    main()
