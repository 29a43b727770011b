#!/usr/bin/env python3
"""Small-coupling scan: correlation energies against their second orders.

Scales the demo potential by dyadic factors and tabulates how fast the
delocalized-pair bound and the optimal correlation energy approach their
second-order expansions.  The deviation columns should shrink linearly
in the coupling scale.

    python3 scripts/coupling_scan.py --n 2109 --scales 3:9
"""

import argparse
import sys

from fermi_rpa import (
    ModelParams,
    build_fermi_ball,
    correlation_delocalized,
    gmb_correlation,
    make_potential,
    scale_coupling,
    second_order_delocalized,
    second_order_optimal,
)
from fermi_rpa.cli import DEMO_POTENTIAL
from fermi_rpa.potential import load_potential
from fermi_rpa.report import format_float


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2109)
    parser.add_argument("--potential", default=None)
    parser.add_argument("--scales", default="3:9", help="dyadic exponent range lo:hi")
    parser.add_argument("--tol", type=float, default=1e-15)
    parser.add_argument("-o", "--output", default=None)
    args = parser.parse_args(argv)

    v = (
        load_potential(args.potential)
        if args.potential
        else make_potential(DEMO_POTENTIAL, support_radius_sq=2)
    )
    lo, hi = (int(c) for c in args.scales.split(":"))
    ball = build_fermi_ball(args.n)
    params = ModelParams(args.n)

    lines = ["s,min_energy_over_s2,so_delocalized,deloc_dev,gmb_over_s2,so_optimal,gmb_dev"]
    for j in range(lo, hi):
        s = 2.0 ** (-j)
        scaled = scale_coupling(v, s)
        deloc = correlation_delocalized(ball, scaled, backend="exact")
        so_deloc = second_order_delocalized(ball, scaled, backend="exact")
        gmb = gmb_correlation(scaled, params, tol=args.tol).total
        so_opt = second_order_optimal(scaled, params)
        lines.append(
            ",".join(
                [
                    format_float(s),
                    format_float(deloc / s ** 2),
                    format_float(so_deloc / s ** 2),
                    format_float(abs(deloc / so_deloc - 1.0)),
                    format_float(gmb / s ** 2),
                    format_float(so_opt / s ** 2),
                    format_float(abs(gmb / so_opt - 1.0)),
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
