"""Steering-regime map of the (a, b) pair over relative phase and direct coupling.

Uses the Fig. 2 loop parameters (kappa = 1, gamma_c = 2, g_a = 3.2, g_b = 5) and
writes a CSV of the sweep plus a colour-coded SVG map.

    python3 scripts/regime_map.py --phi-points 315 --lam-points 120 --workers 4
"""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from closedloop.model import SystemParams  # noqa: E402
from closedloop.output import emit_results  # noqa: E402
from closedloop.sweep import SweepSpec, run_sweep  # noqa: E402

CODES = {"unstable": 0, "no-way": 1, "one-way-forward": 2, "one-way-backward": 3, "two-way": 4}
COLOURS = ["#bbbbbb", "#ffffff", "#4c72b0", "#dd8452", "#55a868"]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--phi-points", type=int, default=181)
    parser.add_argument("--lam-points", type=int, default=80)
    parser.add_argument("--lam-max", type=float, default=1.5)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", default="results/regime_map")
    args = parser.parse_args()

    base = SystemParams(1.0, 1.0, 2.0, g_a=3.2, g_b=5.0)
    phis = np.linspace(0.0, 2 * math.pi, args.phi_points)
    lams = np.linspace(0.0, args.lam_max, args.lam_points)
    result = run_sweep(SweepSpec(base, ("phi", phis), ("lam", lams)), workers=args.workers)
    emit_results(result, args.out, "csv", stem="regimes")

    codes = np.array([CODES[r] for r in result.regimes()]).reshape(len(phis), len(lams))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.pcolormesh(phis / math.pi, lams, codes.T, cmap=ListedColormap(COLOURS),
                  vmin=-0.5, vmax=len(COLOURS) - 0.5, shading="nearest")
    ax.set_xlabel("phi / pi")
    ax.set_ylabel("lambda / kappa")
    handles = [plt.Rectangle((0, 0), 1, 1, fc=c, ec="k") for c in COLOURS]
    ax.legend(handles, list(CODES), loc="upper left", fontsize=7, framealpha=0.9)
    fig.tight_layout()
    path = Path(args.out) / "regimes.svg"
    fig.savefig(path, format="svg")
    counts = {name: int(np.sum(codes == code)) for name, code in CODES.items()}
    print(f"wrote {path}; cell counts {counts}")


if __name__ == "__main__":
    main()
