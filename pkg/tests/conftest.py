#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Shared fixtures: the orbit partition, both graphs and the magic unitary."""

import os
import sys

import networkx as nx
import pytest

_TESTS_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(_TESTS_DIR, "..", "src"))

from graph_core import Graph                                           # noqa: E402
from magic import build_magic_unitary                                  # noqa: E402
from roots import (                                                    # noqa: E402
    build_Gw, build_orthogonality_graph, default_partition, default_w_choice,
)


@pytest.fixture(scope="session")
def partition():
    return default_partition()


@pytest.fixture(scope="session")
def w_choice():
    return default_w_choice()


@pytest.fixture(scope="session")
def g_e8(partition):
    return build_orthogonality_graph(partition.lines)


@pytest.fixture(scope="session")
def g_w(partition, w_choice):
    return build_Gw(partition.lines, partition, w_choice)


@pytest.fixture(scope="session")
def magic_u(partition, w_choice):
    return build_magic_unitary(partition, w_choice)


@pytest.fixture
def petersen():
    return Graph.from_networkx(nx.petersen_graph())


@pytest.fixture
def config_dir(tmp_path):
    path = tmp_path / "config"
    path.mkdir()
    return str(path)
