"""Probe absorption across the transparency window for a sweep of gamma_2."""
import argparse
import csv
from pathlib import Path

import numpy as np

from scalar_ab.eit import LambdaSystem, dip_metric, scan_grid, transparency_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rabi-c", type=float, default=1.0)
    ap.add_argument("--gamma-2", type=float, nargs="+", default=[0.0, 1e-3, 1e-2, 0.1, 0.5])
    ap.add_argument("--out", type=Path, default=Path("out/eit_window.csv"))
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)

    curves = []
    for g2 in args.gamma_2:
        sys_ = LambdaSystem(delta_p=0.0, delta_c=0.0, rabi_p=0.01, rabi_c=args.rabi_c,
                            gamma_3=1.0, gamma_2=g2)
        curve = transparency_scan(sys_, scan_grid(sys_))
        dip = dip_metric(curve)
        print(f"gamma_2={g2:g}  dip={dip.present}  depth={dip.depth_fraction:.4f}")
        curves.append(curve)

    grid = curves[0].frequency
    with args.out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["frequency"] + [f"gamma_2={g:g}" for g in args.gamma_2])
        w.writerows(np.column_stack([grid] + [c.absorption for c in curves]).tolist())

    if args.plot:
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        for g2, c in zip(args.gamma_2, curves):
            ax.plot(c.frequency, c.absorption, label=f"gamma_2={g2:g}")
        ax.set_xlim(-3, 3)
        ax.set_xlabel("probe detuning / gamma_3")
        ax.set_ylabel("Im rho_31")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.out.with_suffix(".png"), dpi=150)


if __name__ == "__main__":
    main()
