"""Sideband weight profile J_n(alpha)^2 for a few modulation depths.

Writes one CSV per alpha into --out, and a log-scale plot if matplotlib is installed.
"""
import argparse
import csv
from pathlib import Path

from scalar_ab import LevelScheme, make_drive, n_max, sideband_spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, nargs="+", default=[10.0, 100.0, 1000.0])
    ap.add_argument("--out", type=Path, default=Path("out/bessel_weights"))
    ap.add_argument("--plot", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    profiles = {}
    for alpha in args.alpha:
        drive = make_drive(alpha, 1.0)
        level = sideband_spectrum(LevelScheme.from_energies([0.0]), drive).level(0)
        keep = level.n >= 0
        profiles[alpha] = (level.n[keep], level.weight[keep])
        path = args.out / f"alpha_{alpha:g}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "weight"])
            w.writerows(zip(level.n[keep].tolist(), level.weight[keep].tolist()))
        peak = int(level.n[keep][level.weight[keep].argmax()])
        print(f"alpha={alpha:g}  n_max={n_max(drive)}  argmax={peak}  -> {path}")

    if args.plot:
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        for alpha, (n, wt) in profiles.items():
            ax.semilogy(n / alpha, wt, label=f"alpha={alpha:g}")
        ax.set_ylim(1e-20, 1)
        ax.set_xlabel("n / alpha")
        ax.set_ylabel("J_n(alpha)^2")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.out / "weights.png", dpi=150)


if __name__ == "__main__":
    main()
