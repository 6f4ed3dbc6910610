#!/usr/bin/env python3
"""Regenerate the band-constants table and print the universal constants.

Usage: python3 scripts/constants_table.py [out.csv]
"""

import sys

from smalldivlab.bounds import format_table1_csv, table1_rows
from smalldivlab.classify import khintchine_constants, levy_example_bound


def main():
    c = khintchine_constants(1e-9)
    ell, G = levy_example_bound()
    print(f"kappa        = {c.kappa:.9f}  (tail bound {c.tail_bound:.1e})")
    print(f"kappa'       = {c.kappa_prime:.9f}")
    print(f"kappa'/kappa = {c.ratio:.9f}")
    print(f"T_minus_max  = {c.t_minus_max:.9f}")
    print(f"ell          = {ell:.9f}")
    print(f"G_example    = {G:.9f}")
    print()
    text = format_table1_csv(table1_rows())
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as fh:
            fh.write(text)
        print(f"table written to {sys.argv[1]}")
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
