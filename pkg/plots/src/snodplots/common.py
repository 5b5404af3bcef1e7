"""Shared CLI plumbing and figure output for the render scripts."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from .schemas import SchemaError  # noqa: E402

EXIT_OK = 0
EXIT_SCHEMA = 2

STABILITY_STYLE = {
    "StableNode": {"linestyle": "-", "color": "black", "label": "stable"},
    "UnstableSource": {"linestyle": "--", "color": "black", "label": "unstable"},
    "Saddle": {"linestyle": ":", "color": "black", "label": "saddle"},
    "Center": {"linestyle": "-.", "color": "gray", "label": "center"},
}


def make_parser(description: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV",
                        help="input CSV file(s) in the order documented per script")
    parser.add_argument("--out", required=True, metavar="IMAGE",
                        help="output image path; both .png and .svg are written")
    return parser


def save_figure(fig, out: str) -> None:
    """Write the figure as both PNG and SVG next to the requested path."""
    base = Path(out)
    if base.suffix.lower() in {".png", ".svg"}:
        base = base.with_suffix("")
    for suffix in (".png", ".svg"):
        fig.savefig(base.with_suffix(suffix), bbox_inches="tight")


def run(render, argv=None) -> int:
    """Parse args, call render(inputs, out, fig), save, map errors to exit codes."""
    import matplotlib.pyplot as plt

    parser = make_parser(render.__doc__ or "")
    args = parser.parse_args(argv)
    fig = plt.figure(figsize=(7.0, 5.0))
    try:
        render(args.inputs, fig)
    except SchemaError as exc:
        plt.close(fig)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    save_figure(fig, args.out)
    plt.close(fig)
    return EXIT_OK
