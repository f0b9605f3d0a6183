"""Graph file parsing and deterministic JSON output.

Graph files are plain text:

    # comment lines start with '#'
    n 4
    e 0 1 0.9
    e 1 2 0.8

Exactly one header line ``n <count>`` must precede the ``e <i> <j> <p>``
edge lines; vertex indices are 0-based.  Blank lines are ignored.  Parse
errors carry the offending line number.

JSON documents are emitted with a fixed key order and floats rendered at
17 significant digits, so output for a given input is byte-identical
across runs and round-trips to the same double.
"""

from __future__ import annotations

import json

from .graph import GraphValidationError, ProbGraph, build_graph

__all__ = ["GraphFileError", "format_graph_file", "parse_graph_file", "to_json"]


class GraphFileError(ValueError):
    """A graph file is malformed; `line` locates the problem when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


def parse_graph_file(text: str) -> ProbGraph:
    """Parse the text form of a graph into a validated ProbGraph."""
    n: int | None = None
    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "n":
            if n is not None:
                raise GraphFileError("duplicate 'n' header", lineno)
            if len(fields) != 2:
                raise GraphFileError("header must be 'n <count>'", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise GraphFileError(f"vertex count {fields[1]!r} is not an integer", lineno)
            if n < 1:
                raise GraphFileError(f"vertex count must be >= 1, got {n}", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFileError("edge line before the 'n' header", lineno)
            if len(fields) != 4:
                raise GraphFileError("edge line must be 'e <i> <j> <p>'", lineno)
            try:
                i, j = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphFileError("edge endpoints must be integers", lineno)
            try:
                p = float(fields[3])
            except ValueError:
                raise GraphFileError(f"probability {fields[3]!r} is not a number", lineno)
            if i == j:
                raise GraphFileError(f"self-loop at vertex {i}", lineno)
            if not (0 <= i < n) or not (0 <= j < n):
                raise GraphFileError(f"edge ({i}, {j}) outside [0, {n})", lineno)
            if not (0.0 <= p <= 1.0):
                raise GraphFileError(f"probability {p} outside [0, 1]", lineno)
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphFileError(f"duplicate edge {key}", lineno)
            seen.add(key)
            edges.append((i, j, p))
        else:
            raise GraphFileError(f"unknown directive {tag!r}", lineno)
    if n is None:
        raise GraphFileError("missing 'n' header")
    try:
        return build_graph(n, edges)
    except GraphValidationError as exc:  # everything above should have caught it
        raise GraphFileError(str(exc)) from exc


def format_graph_file(g: ProbGraph) -> str:
    """Canonical text form; parse_graph_file round-trips it exactly."""
    lines = [f"n {g.n}"]
    lines.extend(f"e {i} {j} {p!r}" for i, j, p in g.edges)
    return "\n".join(lines) + "\n"


def _emit(value, out: list[str], indent: int | None, level: int) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite number {value} in JSON document")
        out.append(format(value, ".17g"))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        open_, close, sep, pad = _punctuation("[", "]", indent, level)
        out.append(open_)
        for pos, item in enumerate(value):
            if pos:
                out.append(sep)
            out.append(pad)
            _emit(item, out, indent, level + 1)
        _close(out, close, indent, level)
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        open_, close, sep, pad = _punctuation("{", "}", indent, level)
        out.append(open_)
        for pos, (key, item) in enumerate(value.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON keys must be strings, got {key!r}")
            if pos:
                out.append(sep)
            out.append(pad)
            out.append(json.dumps(key))
            out.append(": " if indent is not None else ":")
            _emit(item, out, indent, level + 1)
        _close(out, close, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} to JSON")


def _punctuation(open_: str, close: str, indent: int | None, level: int):
    if indent is None:
        return open_, close, ",", ""
    pad = "\n" + " " * (indent * (level + 1))
    return open_, close, ",", pad


def _close(out: list[str], close: str, indent: int | None, level: int) -> None:
    if indent is not None:
        out.append("\n" + " " * (indent * level))
    out.append(close)


def to_json(document, pretty: bool = False) -> str:
    """Serialize a result document deterministically."""
    out: list[str] = []
    _emit(document, out, 2 if pretty else None, 0)
    return "".join(out)
