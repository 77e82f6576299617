"""Edge-list ingestion, table serialization and run configuration."""
from __future__ import annotations

import csv
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParameterDomainError
from .graphgen import Graph
from .model import Kernel, _check_tau

__all__ = [
    "EdgeListError",
    "IngestReport",
    "RunConfig",
    "parse_seeds",
    "read_edge_list",
    "read_table",
    "write_edge_list",
    "write_table",
]

HEADER_TAG = "clusterspec-edgelist"


class EdgeListError(ValueError):
    """Malformed or empty edge-list file; ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        super().__init__(message if lineno is None else f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class IngestReport:
    lines_read: int
    loops_dropped: int
    duplicates_collapsed: int
    n: int
    m: int


def _header_n(line: str):
    # "# clusterspec-edgelist n=<n>" keeps vertex ids (and isolated vertices) verbatim
    parts = line.lstrip("#%").split()
    if len(parts) >= 2 and parts[0] == HEADER_TAG and parts[1].startswith("n="):
        return int(parts[1][2:])
    return None


def read_edge_list(path, with_report: bool = False):
    """Read a whitespace-separated edge list as a simple undirected graph.

    Lines starting with ``#`` or ``%`` and blank lines are skipped; tokens after
    the first two (weights, timestamps) are ignored. Self-loops are dropped,
    repeated and reversed pairs collapsed, and ids compacted to ``0..n-1`` in
    order of first appearance, unless the file carries this package's own
    header, in which case ids are kept as written.

    Returns
    -------
    Graph, or (Graph, IngestReport) when ``with_report`` is set.
    """
    fixed_n = None
    src, dst = [], []
    lines_read = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line[0] in "#%":
                if fixed_n is None and lines_read == 0:
                    fixed_n = _header_n(line)
                continue
            tok = line.split()
            if len(tok) < 2:
                raise EdgeListError("expected two vertex ids", lineno)
            try:
                u, v = int(tok[0]), int(tok[1])
            except ValueError:
                raise EdgeListError(f"non-integer vertex id in {line!r}", lineno) from None
            src.append(u)
            dst.append(v)
            lines_read += 1
    if lines_read == 0 and fixed_n is None:
        raise EdgeListError("no edges found")
    u = np.asarray(src, dtype=np.int64)
    v = np.asarray(dst, dtype=np.int64)
    if fixed_n is not None:
        n = fixed_n
        if lines_read and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise EdgeListError(f"vertex id outside [0, {n}) declared in header")
    else:
        inter = np.empty(2 * len(u), dtype=np.int64)
        inter[0::2], inter[1::2] = u, v
        labels, first = np.unique(inter, return_index=True)
        order = np.argsort(first, kind="stable")
        rank = np.empty(len(labels), dtype=np.int64)
        rank[order] = np.arange(len(labels))
        ids = rank[np.searchsorted(labels, inter)]
        u, v = ids[0::2], ids[1::2]
        n = len(labels)
    loops = int(np.count_nonzero(u == v))
    graph = Graph.from_edges(n, u, v)
    report = IngestReport(lines_read=lines_read, loops_dropped=loops,
                          duplicates_collapsed=lines_read - loops - graph.m, n=n, m=graph.m)
    return (graph, report) if with_report else graph


def write_edge_list(graph: Graph, path) -> None:
    """One ``u v`` line per edge (``u < v``) under a header recording ``n``."""
    u, v = graph.edges()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {HEADER_TAG} n={graph.n} m={graph.m}\n")
        if len(u):
            np.savetxt(fh, np.column_stack([u, v]), fmt="%d")


def _as_columns(table) -> dict:
    if hasattr(table, "columns") and callable(table.columns):
        cols = table.columns()
    elif isinstance(table, dict):
        cols = table
    elif isinstance(table, list):
        keys = list(table[0].keys()) if table else []
        cols = {k: [row[k] for row in table] for k in keys}
    else:
        raise TypeError(f"cannot serialize {type(table).__name__} as a table")
    lengths = {len(np.atleast_1d(c)) for c in cols.values()}
    if len(lengths) > 1:
        raise ValueError("columns differ in length")
    return {k: np.atleast_1d(np.asarray(c)) for k, c in cols.items()}


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _py(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x if not isinstance(x, np.str_) else str(x)


def write_table(table, path, format: str = "csv") -> None:  # noqa: A002
    """CSV with a header row (17 significant digits) or a JSON array of records.

    ``table`` may be any object with ``columns()``, a dict of columns or a
    list of record dicts.
    """
    cols = _as_columns(table)
    names = list(cols)
    rows = len(next(iter(cols.values()))) if cols else 0
    if format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(names)
            for i in range(rows):
                w.writerow([_fmt(cols[c][i]) for c in names])
    elif format == "json":
        records = [{c: _py(cols[c][i]) for c in names} for i in range(rows)]
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(records, fh, indent=1)
            fh.write("\n")
    else:
        raise ParameterDomainError(f"format must be 'csv' or 'json', got {format!r}")


def _convert(values):
    for kind in (int, float):
        try:
            return np.array([kind(v) for v in values])
        except ValueError:
            pass
    return np.array(values, dtype=object)


def read_table(path) -> dict:
    """Columns of a CSV written by ``write_table``, as numpy arrays."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    return {name: _convert([r[i] for r in rows]) for i, name in enumerate(header)}


def parse_seeds(text: str, realizations: int | None = None) -> list[int]:
    """``"7"`` (with ``realizations``: 7, 8, ...), ``"0:100"`` or ``"1,5,9"``."""
    text = str(text).strip()
    if ":" in text:
        lo, hi = (int(s) for s in text.split(":", 1))
        seeds = list(range(lo, hi))
    elif "," in text:
        seeds = [int(s) for s in text.split(",") if s.strip()]
    else:
        start = int(text)
        seeds = list(range(start, start + (realizations or 1)))
    if not seeds or min(seeds) < 0:
        raise ParameterDomainError("seeds must be a nonempty set of nonnegative integers")
    return seeds


@dataclass
class RunConfig:
    """Parameters shared by the command-line subcommands."""

    command: str = "spectrum"
    model: str = "hidden"
    n: int = 10**5
    tau: float = 2.5
    kernel: str = "min"
    seeds: list[int] = field(default_factory=lambda: [0])
    realizations: int = 100
    out: str = "."
    bin_factor: float = 1.5
    tol: float = 1e-8

    def validate(self) -> "RunConfig":
        if self.realizations < 1:
            raise ParameterDomainError("realizations must be >= 1")
        if self.model not in ("hidden", "ecm"):
            raise ParameterDomainError(f"model must be 'hidden' or 'ecm', got {self.model!r}")
        Kernel.parse(self.kernel)
        _check_tau(self.tau)
        if self.n < 2:
            raise ParameterDomainError("n must be >= 2")
        if not self.bin_factor > 1:
            raise ParameterDomainError("bin factor must exceed 1")
        if not 0 < self.tol <= 1e-3:
            raise ParameterDomainError("tol must lie in (0, 1e-3]")
        if not self.seeds or min(self.seeds) < 0:
            raise ParameterDomainError("seeds must be nonnegative")
        target = Path(self.out)
        parent = target if target.is_dir() else target.parent
        if not os.access(parent if str(parent) else ".", os.W_OK):
            raise ParameterDomainError(f"output location {self.out!r} is not writable")
        return self

    def to_json(self) -> str:
        return json.dumps(asdict(self))
