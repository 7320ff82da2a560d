#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Certificate, sidecar and input-file handling.

Certificates are written as JSON (default) or YAML with sorted keys; the
timing block is kept apart from the checks so two runs of the same command
differ only there.
"""

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml
from cryptography.hazmat.primitives import hashes

from exact_arith import RationalMatrix
from graph_core import Graph
from graph_io import graph6_encode, save_graph
from lines import Line, NotARootError, parse_line
from magic import MagicUnitary
from roots import OrbitPartition, WChoice
from switching import GmPartition
from version_info import git_describe

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_INCONCLUSIVE = "inconclusive"


class InputFileError(ValueError):
    """A user-supplied input file could not be used; ``line`` is 1-based when known."""

    def __init__(self, message: str, path: str, line: Optional[int] = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line else path
        super().__init__(f"{where}: {message}")


def _safe_serialise(obj):
    """Best-effort conversion of *obj* to a JSON-safe structure."""
    if isinstance(obj, (str, bool, type(None))):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_safe_serialise(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, dict):
        return {str(k): _safe_serialise(v) for k, v in obj.items()}
    if hasattr(obj, "to_dict"):
        return _safe_serialise(obj.to_dict())
    return str(obj)


def sha256_hex(payload: bytes) -> str:
    digest = hashes.Hash(hashes.SHA256())
    digest.update(payload)
    return digest.finalize().hex()


def graph_digest(g: Graph) -> str:
    """SHA-256 of the graph6 text of g."""
    return sha256_hex(graph6_encode(g).encode("ascii"))


# ----------------------------------------------------------------------
# Certificates
# ----------------------------------------------------------------------

@dataclass
class CheckRecord:
    """One verification step: name, claim it supports, status and details."""

    name: str
    anchor: str
    status: str
    details: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "status": self.status,
                "details": _safe_serialise(self.details)}


@dataclass
class Certificate:
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckRecord] = field(default_factory=list)
    artifact: str = field(default_factory=git_describe)
    schema_version: int = SCHEMA_VERSION

    def add(self, name: str, anchor: str, ok, details: Optional[dict] = None,
            seconds: float = 0.0) -> CheckRecord:
        """Record a check; ``ok`` is a bool or one of the status strings."""
        if isinstance(ok, str):
            status = ok
        else:
            status = STATUS_PASS if ok else STATUS_FAIL
        record = CheckRecord(name, anchor, status, details or {}, seconds)
        self.checks.append(record)
        level = logging.INFO if status != STATUS_FAIL else logging.ERROR
        logger.log(level, "Check %s: %s", name, status)
        return record

    @property
    def failed(self) -> List[CheckRecord]:
        return [c for c in self.checks if c.status == STATUS_FAIL]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_dict(self, include_timing: bool = True) -> dict:
        data = {
            "schema_version": self.schema_version,
            "artifact_git_describe": self.artifact,
            "command": self.command,
            "parameters": _safe_serialise(self.parameters),
            "checks": [c.to_dict() for c in self.checks],
            "summary": {
                "total": len(self.checks),
                "failed": [c.name for c in self.failed],
                "inconclusive": [c.name for c in self.checks if c.status == STATUS_INCONCLUSIVE],
            },
        }
        if include_timing:
            data["timing"] = {c.name: round(c.seconds, 6) for c in self.checks}
        return data

    def to_text(self) -> str:
        lines = [f"{self.command} ({self.artifact})"]
        for c in self.checks:
            lines.append(f"  [{c.status:>12}] {c.name}: {c.anchor}")
        lines.append("PASS" if self.passed else f"FAIL ({len(self.failed)} checks)")
        return "\n".join(lines)


def _atomic_write(file_path: str, text: str) -> None:
    """Write text atomically: temp file + os.replace."""
    dir_path = os.path.dirname(os.path.abspath(file_path))
    os.makedirs(dir_path, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=dir_path, suffix=".tmp")
    try:
        with os.fdopen(fd, 'w', encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp_path, file_path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def dump_structured(data: Any, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "yaml":
        return yaml.safe_dump(data, default_flow_style=False, indent=2, sort_keys=True)
    raise ValueError(f"Unsupported certificate format: {fmt}")


class CertificateManager:
    """Writes certificates, graphs and sidecars into one output directory."""

    def __init__(self, out_dir: str, fmt: str = "json"):
        self.out_dir = out_dir
        self.fmt = fmt
        os.makedirs(out_dir, exist_ok=True)

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def write_certificate(self, cert: Certificate, stem: str) -> str:
        ext = "yaml" if self.fmt == "yaml" else "json"
        path = self.path(f"{stem}.{ext}")
        _atomic_write(path, dump_structured(cert.to_dict(), self.fmt))
        logger.info(f"Wrote certificate to {path}")
        return path

    def write_text(self, name: str, text: str) -> str:
        path = self.path(name)
        _atomic_write(path, text)
        return path

    def write_graph(self, g: Graph, stem: str, graph_format: str = "graph6",
                    sidecar: Optional[dict] = None) -> List[str]:
        """Write the graph and, if given, a YAML sidecar; returns the paths."""
        ext = "g6" if graph_format == "graph6" else "dimacs"
        paths = [save_graph(g, self.path(f"{stem}.{ext}"), graph_format, comment=stem)]
        if sidecar is not None:
            data = dict(sidecar)
            data["sha256_graph6"] = graph_digest(g)
            data["vertices"] = g.n
            data["edges"] = g.number_of_edges
            side = self.path(f"{stem}.labels.yaml")
            _atomic_write(side, dump_structured(_safe_serialise(data), "yaml"))
            paths.append(side)
        return paths


def graph_sidecar(partition: Optional[OrbitPartition] = None, w: Optional[WChoice] = None,
                  labels: Optional[Sequence[str]] = None, extra: Optional[dict] = None) -> dict:
    """Sidecar content: cells, w choice and per-vertex labels."""
    data: Dict[str, Any] = {}
    if partition is not None:
        data["cells"] = {partition.labels[c]: list(cell) for c, cell in enumerate(partition.cells)}
        data["vertex_labels"] = [line.label for line in partition.lines]
    if w is not None:
        data["w_choice"] = [rep.label for rep in w.reps]
    if labels is not None:
        data["vertex_labels"] = list(labels)
    if extra:
        data.update(extra)
    return data


# ----------------------------------------------------------------------
# Input files
# ----------------------------------------------------------------------

def _read_yaml_node(path: str):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InputFileError(f"Cannot read file: {e}", path)
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise InputFileError(f"YAML error: {getattr(e, 'problem', e)}", path,
                             mark.line + 1 if mark else None)
    return node, data


def _line_of(node) -> Optional[int]:
    return node.start_mark.line + 1 if node is not None else None


def _child(node, key):
    """Value node for a mapping key, or None."""
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            if k.value == key:
                return v
    return None


def _items(node):
    return node.value if isinstance(node, yaml.SequenceNode) else []


def load_w_choice(path: str, partition: OrbitPartition) -> WChoice:
    """Read a w choice: a list of 15 line labels, or a mapping with key ``w``.

    Raises:
        InputFileError: malformed file or a representative outside its cell.
    """
    node, data = _read_yaml_node(path)
    if isinstance(data, dict):
        data, node = data.get("w"), _child(node, "w")
    if not isinstance(data, list):
        raise InputFileError("Expected a list of 15 line labels", path, _line_of(node))
    if len(data) != len(partition.cells):
        raise InputFileError(f"Expected {len(partition.cells)} representatives, got {len(data)}",
                             path, _line_of(node))
    nodes = _items(node)
    reps: List[Line] = []
    for c, item in enumerate(data):
        line_no = _line_of(nodes[c]) if c < len(nodes) else None
        try:
            rep = parse_line(str(item)) if not isinstance(item, list) else Line(tuple(item))
        except (NotARootError, ValueError) as e:
            raise InputFileError(str(e), path, line_no)
        if rep not in partition.cell_lines(c):
            raise InputFileError(f"{rep} is not in cell {partition.labels[c]}", path, line_no)
        reps.append(rep)
    logger.info(f"Loaded w choice from {path}")
    return WChoice(tuple(reps))


def load_partition(path: str, n: int, orbit_partition: Optional[OrbitPartition] = None) -> GmPartition:
    """Read a switching partition.

    Two layouts are accepted: ``cells`` / ``d`` with 0-based vertex lists, or
    ``cell_orbits`` / ``d_orbits`` with 1-based orbit numbers, each cell being
    the union of the named orbits.

    Raises:
        InputFileError: malformed file; the error names the offending line.
    """
    node, data = _read_yaml_node(path)
    if not isinstance(data, dict):
        raise InputFileError("Expected a mapping with cells and d", path, _line_of(node))

    def _ints(value, key_node, what):
        if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
            raise InputFileError(f"{what} must be a list of integers", path, _line_of(key_node))
        return value

    if "cell_orbits" in data:
        if orbit_partition is None:
            raise InputFileError("Orbit-based partitions need the orbit cells", path, _line_of(node))
        cells_node = _child(node, "cell_orbits")
        cells = []
        for k, group in enumerate(data["cell_orbits"] or []):
            sub = _items(cells_node)[k] if k < len(_items(cells_node)) else cells_node
            group = _ints(group, sub, f"cell {k + 1}")
            for o in group:
                if not 1 <= o <= len(orbit_partition.cells):
                    raise InputFileError(f"Orbit number {o} out of range", path, _line_of(sub))
            cells.append([v for o in group for v in orbit_partition.cells[o - 1]])
        d_orbits = _ints(data.get("d_orbits", []), _child(node, "d_orbits"), "d_orbits")
        d = [v for o in d_orbits for v in orbit_partition.cells[o - 1]]
    else:
        cells_node = _child(node, "cells")
        if not isinstance(data.get("cells"), list):
            raise InputFileError("Missing list 'cells'", path, _line_of(node))
        cells = []
        for k, cell in enumerate(data["cells"]):
            sub = _items(cells_node)[k] if k < len(_items(cells_node)) else cells_node
            cells.append(_ints(cell, sub, f"cell {k + 1}"))
        d = _ints(data.get("d", []), _child(node, "d"), "d")

    p = GmPartition.create(cells, d)
    try:
        p.check_partitions(n)
    except ValueError as e:
        raise InputFileError(str(e), path, _line_of(node))
    logger.info(f"Loaded partition with {len(p.cells)} cells and |D|={len(p.d)} from {path}")
    return p


# ----------------------------------------------------------------------
# Magic unitary files
# ----------------------------------------------------------------------

def magic_unitary_to_dict(u: MagicUnitary) -> dict:
    """Every entry as integer numerators over its own denominator."""
    blocks = []
    for c, a, b, m in u.entries():
        den, arr = m.scaled_int()
        entry = {"cell": c, "row": a, "col": b, "denominator": den, "numerators": arr.tolist()}
        if u.transporter_words:
            entry["word"] = u.transporter_words[c][a][b]
        blocks.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "n": u.n,
        "dim": u.dim,
        "cells": [list(c) for c in u.cells],
        "labels": list(u.labels),
        "w": [rep.label for rep in u.w] if u.w else None,
        "entries": blocks,
    }


def write_magic_unitary(u: MagicUnitary, path: str, fmt: str = "json") -> str:
    _atomic_write(path, dump_structured(magic_unitary_to_dict(u), fmt))
    logger.info(f"Wrote magic unitary with {len(u.cells)} blocks to {path}")
    return path


def read_magic_unitary(path: str) -> MagicUnitary:
    """Inverse of write_magic_unitary (JSON or YAML).

    Raises:
        InputFileError: missing fields or malformed entries.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f) if path.endswith(".json") else yaml.safe_load(f)
    except OSError as e:
        raise InputFileError(f"Cannot read file: {e}", path)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise InputFileError(f"Cannot parse magic unitary file: {e}", path)
    try:
        cells = tuple(tuple(int(v) for v in c) for c in data["cells"])
        dim = int(data.get("dim", 8))
        grid = [[[None] * len(c) for _ in c] for c in cells]
        words = [[[""] * len(c) for _ in c] for c in cells]
        for k, e in enumerate(data["entries"]):
            num = np.asarray(e["numerators"], dtype=np.int64)
            if num.shape != (dim, dim):
                raise InputFileError(f"Entry {k} has shape {num.shape}, expected {(dim, dim)}", path)
            grid[e["cell"]][e["row"]][e["col"]] = RationalMatrix.from_numpy(num, int(e["denominator"]))
            words[e["cell"]][e["row"]][e["col"]] = e.get("word", "")
        for c, block in enumerate(grid):
            for a, row in enumerate(block):
                for b, m in enumerate(row):
                    if m is None:
                        raise InputFileError(f"Missing entry ({a}, {b}) of block {c}", path)
        w = tuple(parse_line(s) for s in data["w"]) if data.get("w") else None
    except (KeyError, TypeError, IndexError, ValueError, AttributeError) as e:
        if isinstance(e, InputFileError):
            raise
        raise InputFileError(f"Malformed magic unitary file: {e}", path)
    blocks = tuple(tuple(tuple(r) for r in blk) for blk in grid)
    frozen_words = tuple(tuple(tuple(r) for r in blk) for blk in words)
    return MagicUnitary(int(data["n"]), cells, tuple(data["labels"]), blocks, w,
                        frozen_words if any(x for blk in words for r in blk for x in r) else None, dim)
