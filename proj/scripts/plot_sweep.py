#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# bdris: capacity-optimal beyond-diagonal RIS configuration for MIMO links
# Copyright (C) 2026 The bdris authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Plot mean capacity curves from a bdris sweep CSV."""

import argparse
import csv
from collections import defaultdict
from statistics import mean


def load(path):
    # (method, m, snr_db) -> capacities
    groups = defaultdict(list)
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["method"], int(row["m"]), float(row["snr_db"]))
            groups[key].append(float(row["capacity_bits"]))
    return groups


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="output of bdris sweep-elements, sweep-snr or semi-unitary")
    ap.add_argument("--x", choices=["m", "snr_db"], default=None,
                    help="x axis; defaults to whichever column varies")
    ap.add_argument("-o", "--output", default=None, help="image path; shows a window if omitted")
    args = ap.parse_args()

    import matplotlib
    if args.output:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    groups = load(args.csv)
    ms = {k[1] for k in groups}
    snrs = {k[2] for k in groups}
    x_axis = args.x or ("snr_db" if len(snrs) > 1 else "m")

    curves = defaultdict(list)
    for (method, m, snr), values in groups.items():
        fixed = snr if x_axis == "m" else m
        x = m if x_axis == "m" else snr
        curves[(method, fixed)].append((x, mean(values)))

    fig, ax = plt.subplots(figsize=(6, 4))
    for (method, fixed), pts in sorted(curves.items()):
        pts.sort()
        label = method
        if (x_axis == "m" and len(snrs) > 1) or (x_axis == "snr_db" and len(ms) > 1):
            label += f" ({'SNR ' + format(fixed, 'g') + ' dB' if x_axis == 'm' else 'M=' + str(fixed)})"
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=label)
    if x_axis == "m":
        ax.set_xscale("log", base=2)
        ax.set_xlabel("surface elements M")
    else:
        ax.set_xlabel("per-element SNR [dB]")
    ax.set_ylabel("mean capacity [bit/s/Hz]")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
