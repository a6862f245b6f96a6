"""Build every named family over a grid of parameters and tabulate the exact verdicts."""
import argparse
import json
import time

from cohodev import families as fam


def grid(quick: bool):
    for q in (5, 7, 9, 11, 13):
        for n in (d for d in range(2, q) if (q - 1) % d == 0):
            yield "paley-conference", fam.paley_conference, (q, n)
    yield "paley-hadamard1", fam.paley_hadamard_I, (7,)
    yield "paley-hadamard1", fam.paley_hadamard_I, (11,)
    yield "paley-hadamard2", fam.paley_hadamard_II, (5,)
    yield "paley-hadamard2", fam.paley_hadamard_II, (13,)
    for args in ((3, 2, 2), (4, 2, 3), (5, 2, 2), (5, 2, 4), (7, 1, 3)):
        yield "projective", fam.projective_gw, args
    yield "grassmannian", fam.grassmannian_gw, (3, 3, 1, 2)
    if not quick:
        yield "grassmannian", fam.grassmannian_gw, (3, 4, 2, 2)
        yield "flag", fam.flag_gw, (4, (1, 1, 1), 3)
    yield "flag", fam.flag_gw, (4, (1, 2), 3)
    yield "a6-w15", fam.a6_w15, ()
    yield "cube", fam.cube_example, ()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="skip the two largest constructions")
    ap.add_argument("--json", help="also write the rows here")
    args = ap.parse_args()
    rows = []
    for name, fn, params in grid(args.quick):
        t0 = time.perf_counter()
        res = fn(*params)
        dt = time.perf_counter() - t0
        rows.append({"family": name, "params": list(params), "summary": res.summary(), "seconds": round(dt, 3)})
        print(f"{name:17s} {str(params):18s} {res.summary():28s} {dt:7.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
