#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
graph6 and DIMACS edge-format readers and writers.
"""

import logging
import os
from typing import Optional

from graph_core import Graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"


class Graph6FormatError(ValueError):
    """Malformed graph6 text; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class DimacsFormatError(ValueError):
    """Malformed DIMACS text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"{message} (line {line})")


# ----------------------------------------------------------------------
# graph6
# ----------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("Vertex count must be nonnegative")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"Vertex count {n} too large for graph6")


def graph6_encode(g: Graph) -> str:
    """graph6 text (no header, no newline) for g."""
    bits = []
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            bits.append(row >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = value << 1 | b
        chars.append(chr(value + 63))
    return _encode_n(g.n) + "".join(chars)


def graph6_decode(text: str) -> Graph:
    """Parse one graph6 string; an optional ``>>graph6<<`` header is skipped."""
    base = 0
    s = text.rstrip("\r\n")
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6FormatError(f"Character {ch!r} outside the graph6 range", base + pos)
    if not s:
        raise Graph6FormatError("Empty graph6 string", base)

    if s[0] != "~":
        n, pos = ord(s[0]) - 63, 1
    elif len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6FormatError("Truncated vertex count", base + len(s))
        n = 0
        for ch in s[2:8]:
            n = n << 6 | (ord(ch) - 63)
        pos = 8
    else:
        if len(s) < 4:
            raise Graph6FormatError("Truncated vertex count", base + len(s))
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        pos = 4

    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < expected:
        raise Graph6FormatError(f"Expected {expected} adjacency bytes, found {len(body)}", base + len(s))
    if len(body) > expected:
        raise Graph6FormatError("Trailing data after adjacency bytes", base + pos + expected)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if expected and nbits % 6:
        pad = (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6FormatError("Nonzero padding bits", base + pos + expected - 1)
    return Graph(n, rows)


# ----------------------------------------------------------------------
# DIMACS
# ----------------------------------------------------------------------

def write_dimacs(g: Graph, comment: Optional[str] = None) -> str:
    """DIMACS edge format with 1-based vertices."""
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.number_of_edges}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Graph:
    n = None
    declared = 0
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise DimacsFormatError("Duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsFormatError(f"Malformed problem line {line!r}", lineno)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsFormatError(f"Malformed problem line {line!r}", lineno)
        elif parts[0] == "e":
            if n is None:
                raise DimacsFormatError("Edge before problem line", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except (IndexError, ValueError):
                raise DimacsFormatError(f"Malformed edge line {line!r}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsFormatError(f"Vertex out of range in {line!r}", lineno)
            if u == v:
                raise DimacsFormatError(f"Loop at vertex {u}", lineno)
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise DimacsFormatError(f"Unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise DimacsFormatError("Missing problem line", 1)
    if declared != len(edges):
        logger.warning("DIMACS header declares %d edges, found %d distinct", declared, len(edges))
    return Graph.from_edges(n, sorted(edges))


# ----------------------------------------------------------------------
# Files
# ----------------------------------------------------------------------

def graph_format_for_path(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext in (".dimacs", ".col", ".clq"):
        return "dimacs"
    return "graph6"


def save_graph(g: Graph, path: str, fmt: str = "graph6", comment: Optional[str] = None) -> str:
    """Write g to path in the given format; returns the path."""
    if fmt == "graph6":
        payload = graph6_encode(g) + "\n"
    elif fmt == "dimacs":
        payload = write_dimacs(g, comment)
    else:
        raise ValueError(f"Unsupported graph format {fmt!r}")
    with open(path, "w", encoding="ascii") as f:
        f.write(payload)
    logger.info(f"Wrote {fmt} graph with {g.n} vertices to {path}")
    return path


def load_graph(path: str, fmt: Optional[str] = None) -> Graph:
    fmt = fmt or graph_format_for_path(path)
    with open(path, "r", encoding="ascii") as f:
        text = f.read()
    if fmt == "dimacs":
        return read_dimacs(text)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise Graph6FormatError(f"Expected exactly one graph in {path}, found {len(lines)}", 0)
    return graph6_decode(lines[0])
