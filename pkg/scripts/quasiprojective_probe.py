"""Exhaustive probe of the quasiprojective product over q = 5, d = 1, n = 2.

For every nonzero first row T in {0, ±1}^4 this reports whether the circulant
of T is weighing and whether W ⊠ T is weighing, then checks the lifted
orbital products B_{i,j} B_{i,k}^* against c·Δ_{j-k}.
"""
import argparse
import itertools
from collections import Counter

from cohodev.families import _generic_orbit
from cohodev.matrix import orthogonality_weight
from cohodev.products import ZDeveloped, qpord_check, quasiproduct, quasiprojective_setup


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--show", type=int, default=10, help="rows to print per class")
    args = ap.parse_args()
    setup = quasiprojective_setup(args.q, 1, 2)
    i = _generic_orbit(setup.base)
    W = setup.base_basis()[i]
    m = len(setup.Z)
    tally: Counter = Counter()
    shown: Counter = Counter()
    for row in itertools.product((0, 1, -1), repeat=m):
        if not any(row):
            continue
        T = ZDeveloped.from_signs(row)
        prod = orthogonality_weight(quasiproduct(W, T, setup))
        key = (T.is_weighing(), prod is not None)
        tally[key] += 1
        if shown[key] < args.show:
            shown[key] += 1
            print(f"T={row}  T weighing={key[0]}  product weight={prod}")
    print("\n(T weighing, product weighing): count")
    for key, c in sorted(tally.items()):
        print(f"  {key}: {c}")
    qp = qpord_check(setup, i)
    print(f"\nB_j B_k^* = c Delta_(j-k) holds on {sum(qp.values())}/{len(qp)} pairs")


if __name__ == "__main__":
    main()
