#!/usr/bin/env python
# -*- coding: utf-8 -*-

import itertools

import numpy as np

from graph_core import Graph, is_isomorphism, srg_parameters
from isomorphism import (
    INCONCLUSIVE, ISOMORPHIC, NON_ISOMORPHIC, NonIsoCertificate, are_isomorphic,
    refinement_trace, triangles_per_edge, verify_certificate,
)


def _rook_4x4() -> Graph:
    cells = list(itertools.product(range(4), repeat=2))
    edges = [(a, b) for a, b in itertools.combinations(range(16), 2)
             if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]]
    return Graph.from_edges(16, edges)


def _shrikhande() -> Graph:
    cells = list(itertools.product(range(4), repeat=2))
    steps = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = [(a, b) for a, b in itertools.combinations(range(16), 2)
             if ((cells[b][0] - cells[a][0]) % 4, (cells[b][1] - cells[a][1]) % 4) in steps]
    return Graph.from_edges(16, edges)


def test_relabelled_petersen_is_isomorphic(petersen):
    perm = list(np.random.default_rng(3).permutation(10))
    other = petersen.relabel(perm)
    result = are_isomorphic(petersen, other)
    assert result.status == ISOMORPHIC
    assert is_isomorphism(petersen, other, result.mapping)


def test_triangle_counts_separate_c6_from_two_triangles():
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    two_c3 = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert refinement_trace(c6) == refinement_trace(two_c3)
    result = are_isomorphic(c6, two_c3)
    assert result.status == NON_ISOMORPHIC
    assert result.certificate.kind == "triangles_per_edge"
    assert verify_certificate(c6, two_c3, result.certificate)


def test_vertex_count_and_degree_certificates(petersen):
    result = are_isomorphic(petersen, Graph.complete(4))
    assert result.certificate.kind == "vertex_count"
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    result = are_isomorphic(star, path)
    assert result.certificate.kind == "degree_sequence"
    assert verify_certificate(star, path, result.certificate)


def test_srg_mates_with_equal_parameters_are_separated():
    rook, shrikhande = _rook_4x4(), _shrikhande()
    assert srg_parameters(rook) == srg_parameters(shrikhande) == (16, 6, 2, 2)
    assert triangles_per_edge(rook) == triangles_per_edge(shrikhande)
    result = are_isomorphic(rook, shrikhande)
    assert result.status == NON_ISOMORPHIC
    assert verify_certificate(rook, shrikhande, result.certificate)


def test_forged_certificate_is_rejected(petersen):
    forged = NonIsoCertificate("degree_sequence", [3] * 10, [3] * 10)
    assert not verify_certificate(petersen, petersen, forged)
    forged = NonIsoCertificate("independence_number", 4, 5, (0, 2), (0, 1, 2, 3, 4))
    assert not verify_certificate(petersen, petersen, forged)


def test_exhausted_budget_is_inconclusive():
    rook, shrikhande = _rook_4x4(), _shrikhande()
    result = are_isomorphic(rook, shrikhande, budget=1, alpha_budget=1)
    assert result.status in (NON_ISOMORPHIC, INCONCLUSIVE)
    if result.status == NON_ISOMORPHIC:
        assert verify_certificate(rook, shrikhande, result.certificate)
