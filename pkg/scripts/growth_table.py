#!/usr/bin/env python3
"""Tabulate |E/(omega_r/omega_e)E| = p^(e_r) for elementary modules and fit
e_r = mu p^r + lambda r + c, checking the fit against the module invariants."""

import argparse

from iwasawa.lambda_modules import ElementaryModule, growth_sequence, invariants, parse_module_file


EXAMPLES = {
    "p-line": ElementaryModule(5, (1,), ()),
    "T-line": ElementaryModule(5, (), ((0, 1),)),
    "mixed": ElementaryModule(5, (1,), ((-5, 1),)),
    "p3-heavy": ElementaryModule(3, (2,), ((3, 9, 1), (0, 1))),
}


def show(name, E, e, rmax):
    rep = growth_sequence(E, e, rmax)
    mu, lam, _ = invariants(E)
    print(f"{name}: p = {E.prime}, invariants (mu, lambda) = ({mu}, {lam})")
    for r in sorted(rep.exponents):
        print(f"  r = {r}: e_r = {rep.exponents[r]}")
    print(f"  fit: e_r = {rep.mu_fit} p^r + {rep.lambda_fit} r + {rep.c_fit}  (stable from r0 = {rep.r0})")
    print(f"  fit matches invariants: {rep.matches_invariants}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("module_file", nargs="?", help="optional module spec file")
    ap.add_argument("--e", type=int, default=0)
    ap.add_argument("--rmax", type=int, default=5)
    args = ap.parse_args()

    if args.module_file:
        with open(args.module_file) as fh:
            show(args.module_file, parse_module_file(fh.read()), args.e, args.rmax)
    else:
        for name, E in EXAMPLES.items():
            show(name, E, args.e, args.rmax)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
