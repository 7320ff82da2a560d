#!/usr/bin/env python
# -*- coding: utf-8 -*-

import networkx as nx
import pytest

from graph_core import Graph
from graph_io import (
    DimacsFormatError, Graph6FormatError, graph6_decode, graph6_encode, load_graph,
    read_dimacs, save_graph, write_dimacs,
)


@pytest.mark.parametrize("make", [
    nx.petersen_graph,
    lambda: nx.complete_graph(7),
    lambda: nx.cycle_graph(13),
    lambda: nx.gnp_random_graph(70, 0.3, seed=11),
])
def test_graph6_matches_networkx(make):
    g = make()
    expected = nx.to_graph6_bytes(g, header=False).decode("ascii").strip()
    ours = Graph.from_networkx(g)
    assert graph6_encode(ours) == expected
    assert graph6_decode(expected) == ours


def test_graph6_header_is_skipped(petersen):
    text = ">>graph6<<" + graph6_encode(petersen) + "\n"
    assert graph6_decode(text) == petersen


def test_graph6_errors_carry_offsets():
    with pytest.raises(Graph6FormatError) as exc:
        graph6_decode("I he")
    assert exc.value.offset == 1
    with pytest.raises(Graph6FormatError):
        graph6_decode("")
    with pytest.raises(Graph6FormatError):
        graph6_decode("IheA")
    with pytest.raises(Graph6FormatError):
        graph6_decode("B~")  # padding bits set on a 3-vertex graph


def test_dimacs_round_trip(petersen):
    text = write_dimacs(petersen, comment="petersen")
    assert text.startswith("c petersen\np edge 10 15\n")
    assert read_dimacs(text) == petersen


def test_dimacs_errors_carry_line_numbers():
    with pytest.raises(DimacsFormatError) as exc:
        read_dimacs("c header\np edge 3 1\ne 1 4\n")
    assert exc.value.line == 3
    with pytest.raises(DimacsFormatError) as exc:
        read_dimacs("e 1 2\n")
    assert exc.value.line == 1
    with pytest.raises(DimacsFormatError) as exc:
        read_dimacs("p edge 3 1\ne 2 2\n")
    assert exc.value.line == 2
    with pytest.raises(DimacsFormatError):
        read_dimacs("p edge 3 0\nx 1\n")


def test_files_by_extension(tmp_path, petersen):
    g6 = save_graph(petersen, str(tmp_path / "p.g6"))
    dim = save_graph(petersen, str(tmp_path / "p.dimacs"), "dimacs")
    assert load_graph(g6) == petersen
    assert load_graph(dim) == petersen
    with pytest.raises(ValueError):
        save_graph(petersen, str(tmp_path / "p.txt"), "adjlist")
