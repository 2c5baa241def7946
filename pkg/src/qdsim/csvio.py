"""
Deterministic CSV output.

Layout::

    # qdsim v1
    # key=value key=value ...        (effective configuration)
    col1,col2,...
    1.00000000e0,...

Floats are written in scientific notation with a fixed number of
significant digits and an unpadded exponent (``-4.93e-2``). Lines end in LF.
"""

from __future__ import annotations

import io
import math
from pathlib import Path

import numpy as np

from .observables import GridResult, SweepResult
from .solvers import Trajectory

__all__ = ["FORMAT_TAG", "TRAJECTORY_COLUMNS", "format_float", "table_of", "render_csv",
           "write_csv", "read_csv"]

FORMAT_TAG = "# qdsim v1"
TRAJECTORY_COLUMNS = ("t", "rho00", "rho11", "rho22", "re_rho01", "im_rho01",
                      "re_rho02", "im_rho02", "re_rho12", "im_rho12")


def format_float(value: float, precision: int = 9) -> str:
    """Scientific notation with ``precision`` significant digits."""
    value = float(value) + 0.0  # no negative zero
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    mantissa, exponent = f"{value:.{precision - 1}e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def table_of(result):
    """Column names and 2-D data of a sweep, grid or trajectory."""
    if isinstance(result, Trajectory):
        return TRAJECTORY_COLUMNS, np.column_stack([result.times, result.states])
    if isinstance(result, (SweepResult, GridResult)):
        return result.header, result.data
    raise TypeError(f"cannot write {type(result).__name__} as CSV")


def render_csv(result, echo: str = "", precision: int = 9) -> str:
    columns, data = table_of(result)
    lines = [FORMAT_TAG, f"# {echo}".rstrip(), ",".join(columns)]
    for row in data:
        lines.append(",".join(format_float(v, precision) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(result, path, echo: str = "", precision: int = 9) -> None:
    """Write ``result`` to ``path`` (a filename or a text stream).

    ``echo`` is the ``key=value`` configuration line placed after the
    format tag.
    """
    text = render_csv(result, echo, precision)
    if isinstance(path, io.TextIOBase) or hasattr(path, "write"):
        path.write(text)
        return
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_csv(path):
    """Read a file written by :func:`write_csv`.

    Returns ``(echo, columns, data)`` where ``echo`` is the configuration
    line without its leading ``# ``.
    """
    with open(path, encoding="utf-8") as fh:
        tag = fh.readline().rstrip("\n")
        if tag != FORMAT_TAG:
            raise ValueError(f"{path}: not a qdsim CSV (first line {tag!r})")
        echo = fh.readline().rstrip("\n")[1:].strip()
        columns = tuple(fh.readline().rstrip("\n").split(","))
        rows = [[float(v) for v in line.split(",")] for line in fh if line.strip()]
    data = np.array(rows, dtype=float).reshape(-1, len(columns))
    return echo, columns, data
