"""Count group-developed K for which the cocyclic matrix of an extension cocycle is weighing.

For Z/m obtained from Z/mk, every K in {0, 1, -1}^m (as a developed matrix)
is tried and the resulting weights are tabulated.
"""
import argparse
import itertools
from collections import Counter

from cohodev.cocyclic import cocycle_from_extension, cocyclic_matrix, cyclic_extension, developed_from_function
from cohodev.matrix import orthogonality_weight


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[2, 4, 6, 8])
    ap.add_argument("--k", type=int, default=2)
    args = ap.parse_args()
    for m in args.m:
        w = cocycle_from_extension(cyclic_extension(m, args.k))
        weights: Counter = Counter()
        for fn in itertools.product((None, 0, 1), repeat=m):
            if all(v is None for v in fn):
                continue
            A = cocyclic_matrix(w, K=developed_from_function(w.G, list(fn), 2))
            weights[orthogonality_weight(A)] += 1
        found = {k: v for k, v in weights.items() if k is not None}
        print(f"Z/{m} from Z/{m * args.k}: weighing by weight {dict(sorted(found.items()))}, "
              f"non-weighing {weights[None]}")


if __name__ == "__main__":
    main()
