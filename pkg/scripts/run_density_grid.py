#!/usr/bin/env python3
"""Tabulate angular emission densities on a (kappa_y, kappa_z) grid.

The grid spans the dielectric light cone by default, so it covers both
radiation (kappa < 1) and evanescent (1 < kappa <= n1) modes.
"""

import argparse

from surfemit import InterfaceConfig, SweepRequest, grid_density
from surfemit.cli import _parse_dipole


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n1", type=float, default=1.45)
    ap.add_argument("--wavelength-nm", type=float, default=852.0)
    ap.add_argument("--dipole", default="eps-xz")
    ap.add_argument("--x-nm", type=float, default=200.0)
    ap.add_argument("--grid-n", type=int, default=128)
    ap.add_argument("--grid-extent", type=float, default=None,
                    help="half-width in kappa (default n1)")
    ap.add_argument("--out", default="density_grid.csv")
    args = ap.parse_args()

    req = SweepRequest(
        config=InterfaceConfig(n1=args.n1, lambda0_nm=args.wavelength_nm),
        dipole=_parse_dipole(args.dipole),
        grid_n=args.grid_n, grid_extent=args.grid_extent,
        x_fixed_nm=args.x_nm)
    table = grid_density(req)
    with open(args.out, "w") as fh:
        fh.write(table.to_csv())
    region = table.column("region")
    print(f"wrote {table.rows.shape[0]} rows to {args.out}; "
          f"{int((region == 1).sum())} evanescent cells, "
          f"{int((region == 0).sum())} radiation cells")


if __name__ == "__main__":
    main()
