"""Regenerate the data (and SVG plots) for every figure sweep.

    python3 scripts/reproduce_figures.py --out results --workers 4
    python3 scripts/reproduce_figures.py 2a 7 --points 200
"""

import argparse
import time

from closedloop.cli import series_stem
from closedloop.figures import FIGURE_IDS, reproduce_figure
from closedloop.output import emit_results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("ids", nargs="*", default=list(FIGURE_IDS), choices=FIGURE_IDS)
    parser.add_argument("--out", default="results")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--points", type=int)
    parser.add_argument("--format", default="csv", choices=("csv", "json", "both"))
    args = parser.parse_args()

    for fig_id in args.ids:
        start = time.perf_counter()
        run = reproduce_figure(fig_id, workers=args.workers, points=args.points)
        out = f"{args.out}/fig{fig_id}"
        for label, result in run.series.items():
            emit_results(result, out, args.format, stem=series_stem(label), plot=True)
        elapsed = time.perf_counter() - start
        print(f"fig {fig_id}: {len(run.series)} series -> {out} ({elapsed:.1f} s)")


if __name__ == "__main__":
    main()
