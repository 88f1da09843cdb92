"""File output and the command-line interface."""
from .csvio import emit_csv, read_csv
from .svg import emit_fig1_svg, fig1_svg

__all__ = ["emit_csv", "read_csv", "emit_fig1_svg", "fig1_svg"]
