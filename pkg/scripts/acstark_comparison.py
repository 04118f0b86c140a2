"""Compare AC-Stark sideband coefficients with the scalar-potential weights.

At beta = 0 the two agree exactly; a nonzero beta shows how the quadratic
term reshapes the comb.
"""
import argparse

import numpy as np

from scalar_ab.acstark import ACStarkParams, c_n_table, scalar_weights


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--e0", type=float, default=1.0)
    ap.add_argument("--d", type=float, default=5.0)
    ap.add_argument("--omega", type=float, default=1.0)
    ap.add_argument("--beta", type=float, nargs="+", default=[0.0, 0.8, 4.0])
    ap.add_argument("--n", type=int, default=12)
    args = ap.parse_args()

    n = np.arange(-args.n, args.n + 1)
    base = scalar_weights(ACStarkParams(args.e0, args.d, 0.0, args.omega), n)
    cols = {b: c_n_table(ACStarkParams(args.e0, args.d, b, args.omega), n) for b in args.beta}
    print("n," + "scalar_ab," + ",".join(f"beta={b:g}" for b in args.beta))
    for k, nn in enumerate(n):
        print(f"{nn},{base[k]:.12g}," + ",".join(f"{cols[b][k]:.12g}" for b in args.beta))


if __name__ == "__main__":
    main()
