#!/usr/bin/env python3
"""Build the Euler-corrected zeta values (1 - p^(n-1)) zeta(1-n) three ways:

  1. Stickelberger elements at level p^r, evaluated at kappa^(1-n);
  2. the elementary Kummer-congruence limit in n's own residue class;
  3. Coleman-series unit measures on Z_p^x (moments).

All three must agree p-adically; the script prints the values and the
pairwise agreement valuations.
"""

import argparse
from fractions import Fraction

from iwasawa import coleman, exactq
from iwasawa.characters import DirichletCharacter
from iwasawa.group_algebra import (
    PadicCharSpec,
    branch_limit_oracle,
    branch_limit_regularized,
    evaluate_char,
    h_char_value,
    h_element,
    mu_chi_level,
)
from iwasawa.padic import PadicNumber, vp_diff


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=5)
    ap.add_argument("--level", type=int, default=6, help="Stickelberger level r")
    ap.add_argument("--kummer-k", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=6)
    args = ap.parse_args()

    p, r, k = args.prime, args.level, args.kummer_k
    prec = r + 4
    triv = DirichletCharacter.trivial(1, p)
    hmu = h_element(1, r, p) * mu_chi_level(triv, r, prec)
    M, N = args.nmax + 7 * (p - 1), 6

    for n in range(2, args.nmax + 1, 2):
        ref = PadicNumber.from_rational(exactq.euler_stripped_zeta(n, p), p, prec)
        spec = PadicCharSpec((1 - n) % (p - 1), 1 - n)
        s_val = evaluate_char(hmu, spec, p, prec) / h_char_value(1, p, spec, prec + 4)
        c_val = coleman.zeta_moment(n, 1, 3, p, M, N)
        o_val = branch_limit_oracle(p, n, k, 2, prec)
        print(f"n = {n}: (1 - p^(n-1)) zeta(1-n) = {exactq.euler_stripped_zeta(n, p)}")
        print(f"  stickelberger  {s_val}   v(diff vs exact) = {vp_diff(s_val, ref)}")
        print(f"  coleman        {c_val}   v(diff vs exact) = {vp_diff(c_val, ref)}")
        print(f"  kummer limit   {o_val}   v(diff vs exact) = {vp_diff(o_val, ref)}")
        if n % (p - 1) == 0:
            c_reg = 2
            f_m = branch_limit_regularized(p, n, k, c_reg)
            tgt = -(1 - Fraction(c_reg) ** n) * exactq.euler_stripped_zeta(n, p)
            print(f"  ((p-1) | n branch: regularized limit agrees to v = {exactq.vp(f_m - tgt, p)})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
