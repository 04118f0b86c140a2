"""Order-of-magnitude numbers for a lab-scale drive (SI units)."""
import argparse

from scalar_ab import LevelScheme, dominant_splitting, make_drive
from scalar_ab.floquet import image_offset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v0", type=float, default=5e-4, help="potential amplitude, volts")
    ap.add_argument("--omega", type=float, default=1e8, help="angular frequency, rad/s")
    args = ap.parse_args()

    drive = make_drive(args.v0, args.omega, "SI")
    split = dominant_splitting(LevelScheme.from_energies([0.0]), drive)
    print(f"alpha               = {drive.alpha:.6g}")
    print(f"n_max               = {split.levels[0].n_max}")
    print(f"n_max * Omega       = {split.shift_frequency():.6e} rad/s")
    print(f"e V0 / hbar         = {image_offset(drive):.6e} rad/s")
    print(f"sideband spacing    = {drive.omega:.6e} rad/s")


if __name__ == "__main__":
    main()
