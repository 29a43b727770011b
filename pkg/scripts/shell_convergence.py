#!/usr/bin/env python3
"""Convergence of exact lattice quantities to their continuum forms.

Walks the closed-shell grid, evaluating the exact lune norm, the exact
kinetic coefficient, and the kinetic energy density against their
continuum limits, and writes one CSV row per shell.

    python3 scripts/shell_convergence.py --shells 4,16,64,256,1024 -o table.csv
"""

import argparse
import math
import sys

from fermi_rpa import (
    ModelParams,
    build_fermi_ball,
    closed_shell_sizes,
    hf_energy,
    kinetic_coefficient,
    kinetic_coefficient_asymptotic,
    lune_count,
    make_potential,
    nk_asymptotic,
)
from fermi_rpa.report import format_float

KIN_DENSITY_LIMIT = (4.0 * math.pi / 5.0) * (3.0 / (4.0 * math.pi)) ** (5.0 / 3.0)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--shells", default="4,16,64,256,1024")
    parser.add_argument("--k", default="1,0,0", help="transfer momentum kx,ky,kz")
    parser.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    args = parser.parse_args(argv)

    k = tuple(int(c) for c in args.k.split(","))
    shells = [int(s) for s in args.shells.split(",")]
    zero_potential = make_potential({(0, 0, 0): 0.0})

    lines = [
        "shell_radius_sq,n,nk_exact,nk_asym,nk_rel_err,"
        "kdotf_exact,kdotf_asym,kdotf_rel_err,kinetic_density_rel_err"
    ]
    for radius_sq in shells:
        levels = dict(closed_shell_sizes(radius_sq))
        if radius_sq not in levels:
            sys.stderr.write(f"skipping {radius_sq}: not an attained level\n")
            continue
        n = levels[radius_sq]
        ball = build_fermi_ball(n)
        params = ModelParams(n)
        nk_exact = math.sqrt(lune_count(ball, k).count)
        nk_asym = nk_asymptotic(params, k)
        kf_exact = kinetic_coefficient(ball, k).kdotf
        kf_asym = kinetic_coefficient_asymptotic(params, k)
        kin = hf_energy(ball, zero_potential, params).kinetic / n
        lines.append(
            ",".join(
                [
                    str(radius_sq),
                    str(n),
                    format_float(nk_exact),
                    format_float(nk_asym),
                    format_float(abs(nk_exact / nk_asym - 1.0)),
                    format_float(kf_exact),
                    format_float(kf_asym),
                    format_float(abs(kf_exact / kf_asym - 1.0)),
                    format_float(abs(kin / KIN_DENSITY_LIMIT - 1.0)),
                ]
            )
        )
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
