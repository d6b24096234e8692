"""Text formats for graphs, edge streams, and change logs.

Graph files carry one edge per line as two whitespace-separated labels,
``<left> <right>``. Stream files carry ``<op> <left> <right>`` with op
``+`` or ``-``; an optional trailing token (a timestamp) is ignored,
input order is authoritative. ``#`` starts a comment, blank lines are
skipped. Labels are arbitrary tokens mapped to dense integer ids per
side in order of first appearance.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .graph import BipartiteGraph, Edge
from .mbe import Biclique


class ParseError(ValueError):
    """Malformed input line; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class StreamConsistencyError(ValueError):
    """The stream asked for an impossible replay step."""


class LabelMap:
    """Bidirectional label <-> dense id mapping, one space per side."""

    def __init__(self):
        self._left: list[str] = []
        self._right: list[str] = []
        self._left_ids: dict[str, int] = {}
        self._right_ids: dict[str, int] = {}

    def left_id(self, label: str) -> int:
        vid = self._left_ids.get(label)
        if vid is None:
            vid = len(self._left)
            self._left_ids[label] = vid
            self._left.append(label)
        return vid

    def right_id(self, label: str) -> int:
        vid = self._right_ids.get(label)
        if vid is None:
            vid = len(self._right)
            self._right_ids[label] = vid
            self._right.append(label)
        return vid

    def left_label(self, vid: int) -> str:
        return self._left[vid]

    def right_label(self, vid: int) -> str:
        return self._right[vid]

    @classmethod
    def identity(cls, graph: BipartiteGraph) -> "LabelMap":
        """Labels that are just the stringified integer ids."""
        labels = cls()
        for u in graph.left_ids():
            labels._left_ids[str(u)] = u
        for v in graph.right_ids():
            labels._right_ids[str(v)] = v
        labels._left = [str(u) for u in graph.left_ids()]
        labels._right = [str(v) for v in graph.right_ids()]
        return labels


def _content_tokens(raw: str) -> list[str]:
    return raw.split("#", 1)[0].split()


def parse_graph(
    lines: Iterable[str], labels: LabelMap | None = None
) -> tuple[BipartiteGraph, LabelMap]:
    """Parse an edge-list graph file."""
    labels = labels or LabelMap()
    edges = []
    seen = set()
    for line_no, raw in enumerate(lines, start=1):
        tokens = _content_tokens(raw)
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(
                f"expected '<left> <right>', got {len(tokens)} token(s)",
                line_no,
            )
        e = Edge(labels.left_id(tokens[0]), labels.right_id(tokens[1]))
        if e in seen:
            raise ParseError(f"duplicate edge {tokens[0]} {tokens[1]}", line_no)
        seen.add(e)
        edges.append(e)
    return BipartiteGraph.from_edges(edges), labels


def parse_graph_file(path: str | Path) -> tuple[BipartiteGraph, LabelMap]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh)


def parse_stream(
    lines: Iterable[str], labels: LabelMap
) -> list[tuple[str, Edge]]:
    """Parse a stream file into (op, edge) pairs, extending the labels."""
    ops = []
    for line_no, raw in enumerate(lines, start=1):
        tokens = _content_tokens(raw)
        if not tokens:
            continue
        if len(tokens) not in (3, 4):
            raise ParseError(
                f"expected '<op> <left> <right>', got {len(tokens)} token(s)",
                line_no,
            )
        op = tokens[0]
        if op not in ("+", "-"):
            raise ParseError(f"unknown op {op!r}, expected '+' or '-'", line_no)
        ops.append(
            (op, Edge(labels.left_id(tokens[1]), labels.right_id(tokens[2])))
        )
    return ops


def parse_stream_file(
    path: str | Path, labels: LabelMap
) -> list[tuple[str, Edge]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_stream(fh, labels)


def write_graph(
    graph: BipartiteGraph, path: str | Path, labels: LabelMap | None = None
) -> None:
    labels = labels or LabelMap.identity(graph)
    with open(path, "w", encoding="utf-8") as fh:
        for e in graph.edges():
            fh.write(f"{labels.left_label(e.u)} {labels.right_label(e.v)}\n")


def write_stream(
    ops: Iterable[tuple[str, Edge]],
    path: str | Path,
    labels: LabelMap,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for op, e in ops:
            fh.write(
                f"{op} {labels.left_label(e.u)} {labels.right_label(e.v)}\n"
            )


def format_biclique(b: Biclique, labels: LabelMap) -> str:
    """Tab-separated canonical text: left labels, right labels."""
    left = ",".join(labels.left_label(u) for u in b.left)
    right = ",".join(labels.right_label(v) for v in b.right)
    return f"{left}\t{right}"
