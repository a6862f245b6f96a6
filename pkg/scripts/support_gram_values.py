"""Gram value sets of the Kronecker support and the quasiprojective support for several q."""
import argparse

from cohodev.products import gram_value_set, kronecker_support, quasiprojective_support


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[5, 7, 9, 11, 13])
    args = ap.parse_args()
    for q in args.q:
        k = sorted(gram_value_set(kronecker_support(q)), reverse=True)
        s = sorted(gram_value_set(quasiprojective_support(q)), reverse=True)
        sq = (q - 2) ** 2
        print(f"q={q:3d}  kronecker {k}  quasiprojective {s}  {sq} separates: {sq in s and sq not in k}")


if __name__ == "__main__":
    main()
