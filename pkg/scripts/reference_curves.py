#!/usr/bin/env python3
"""Print the closed-form reference values the simulator is checked against.

Two tables:

* flat-Rayleigh BPSK bit error rate for a single receive branch and for
  two-branch maximum-ratio combining, over an SNR grid, and
* the expected minimum quantization distortion of a random codebook on
  two transmit antennas, which for 2^B unit vectors is 1/(2^B + 1).

With --check, a short Monte Carlo run is placed next to each closed
form: perfect-CSI beamforming on a 2x1 link lands on the two-branch
curve, a single random beam (B=0) lands on the one-branch curve, and
an empirical distortion mean lands on the 1/(2^B+1) law.
"""

import argparse
import sys

import numpy as np

sys.path.insert(0, "src")

from lfbeam.codebook import gen_rvq, quantize_direction
from lfbeam.simulator import SimConfig, run_sweep


def mrc_bpsk_ber(snr_db: float, branches: int) -> float:
    gbar = 10.0 ** (snr_db / 10.0)
    p = 0.5 * (1.0 - np.sqrt(gbar / (1.0 + gbar)))
    if branches == 1:
        return p
    if branches == 2:
        return p * p * (1.0 + 2.0 * (1.0 - p))
    raise ValueError("only 1 or 2 branches have a pinned closed form")


def run_check(snrs, target_errors, max_bits, seed):
    perfect = run_sweep(SimConfig(
        n_t=2, n_r=1, snr_db_points=tuple(snrs),
        target_errors=target_errors, max_bits=max_bits, master_seed=seed,
    ))
    single = run_sweep(SimConfig(
        n_t=2, n_r=1, feedback_bits=0, snr_db_points=tuple(snrs),
        target_errors=target_errors, max_bits=max_bits, master_seed=seed,
    ))
    return perfect, single


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--snr", default="0,2,4,6,8,10,12,14,16,18,20",
                    help="comma-separated SNR grid in dB")
    ap.add_argument("--check", action="store_true",
                    help="run a short simulation next to each closed form")
    ap.add_argument("--target-errors", type=int, default=400)
    ap.add_argument("--max-bits", type=int, default=4_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    snrs = [float(s) for s in args.snr.split(",")]

    header = f"{'snr_db':>7}  {'1-branch':>12}  {'2-branch':>12}"
    if args.check:
        header += f"  {'sim B=0':>12}  {'sim perfect':>12}"
        perfect, single = run_check(
            snrs, args.target_errors, args.max_bits, args.seed)
    print("flat-Rayleigh BPSK bit error rate")
    print(header)
    for i, s in enumerate(snrs):
        row = (f"{s:7.1f}  {mrc_bpsk_ber(s, 1):12.4e}"
               f"  {mrc_bpsk_ber(s, 2):12.4e}")
        if args.check:
            pb0 = single.points[i]
            pbf = perfect.points[i]
            row += (f"  {pb0.ber:12.4e}{'' if pb0.converged else '*'}"
                    f"  {pbf.ber:12.4e}{'' if pbf.converged else '*'}")
        print(row)
    if args.check:
        print("  (* = stopped on the bit cap before reaching the error target)")

    print()
    print("random-codebook distortion, two transmit antennas")
    print(f"{'bits':>5}  {'1/(2^B+1)':>11}" +
          (f"  {'empirical':>11}" if args.check else ""))
    rng = np.random.default_rng(args.seed)
    for b in (1, 2, 3, 4, 6, 8):
        expected = 1.0 / ((1 << b) + 1)
        row = f"{b:5d}  {expected:11.5f}"
        if args.check:
            n = 4000
            acc = 0.0
            for i in range(n):
                h = rng.standard_normal(2) + 1j * rng.standard_normal(2)
                cb = gen_rvq(2, b, seed=(b << 20) + i)
                acc += quantize_direction(h, cb).distortion
            row += f"  {acc / n:11.5f}"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
