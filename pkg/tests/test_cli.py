#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import os

import pytest

from cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, run
from config_manager import ConfigManager
from graph_io import save_graph


@pytest.fixture
def config(config_dir):
    return ConfigManager(config_dir=config_dir)


def _certificate(out, name):
    with open(os.path.join(out, name)) as f:
        return json.load(f)


def test_verify_srg(tmp_path, config):
    out = str(tmp_path / "out")
    assert run(["verify", "srg", "--out", out], config) == EXIT_OK
    cert = _certificate(out, "certificate-srg.json")
    assert cert["command"] == "verify srg"
    assert {c["status"] for c in cert["checks"]} == {"pass"}
    assert cert["checks"][0]["details"]["parameters"] == [120, 63, 30, 36]


def test_verify_intertwiner(tmp_path, config):
    out = str(tmp_path / "out")
    assert run(["verify", "intertwiner", "--out", out], config) == EXIT_OK
    names = [c["name"] for c in _certificate(out, "certificate-intertwiner.json")["checks"]]
    assert names == ["intertwiner", "gw_non_edge_criterion", "w_choice_independence"]


def test_build_graphs(tmp_path, config):
    out = str(tmp_path / "out")
    assert run(["build", "e8", "--out", out, "--format", "dimacs"], config) == EXIT_OK
    assert os.path.exists(os.path.join(out, "g_e8.dimacs"))
    assert os.path.exists(os.path.join(out, "g_e8.labels.yaml"))
    assert run(["build", "gw", "--out", out, "--yaml"], config) == EXIT_OK
    assert os.path.exists(os.path.join(out, "g_w.g6"))
    assert os.path.exists(os.path.join(out, "certificate-build-gw.yaml"))


def test_magic_file_feeds_verification(tmp_path, config):
    out = str(tmp_path / "out")
    assert run(["build", "magic", "--out", out], config) == EXIT_OK
    path = os.path.join(out, "magic_unitary.json")
    assert run(["verify", "magic", "--out", out, "--magic", path, "--product-mode", "blockwise"],
               config) == EXIT_OK


def test_swapped_graph_fails_gamma1(tmp_path, config, g_e8):
    out = str(tmp_path / "out")
    graph = save_graph(g_e8, str(tmp_path / "e8.g6"))
    assert run(["verify", "gamma1", "--out", out, "--graph2", graph], config) == EXIT_CHECK_FAILED
    cert = _certificate(out, "certificate-gamma1.json")
    assert cert["summary"]["failed"] == ["gamma1_isomorphism"]


def test_homcount(tmp_path, config):
    out = str(tmp_path / "out")
    assert run(["homcount", "--out", out, "--nmax", "3"], config) == EXIT_OK
    with open(os.path.join(out, "hom-profile.txt")) as f:
        rows = f.read().splitlines()
    assert len(rows) == 4
    assert all(r.split()[1] == r.split()[2] for r in rows)


def test_pattern_cap_needs_long_run(tmp_path, config):
    assert run(["homcount", "--out", str(tmp_path), "--nmax", "6"], config) == EXIT_USAGE


def test_bad_input_files_exit_with_usage_code(tmp_path, config):
    bad_w = tmp_path / "w.yaml"
    bad_w.write_text("- e1-e2\n")
    assert run(["verify", "intertwiner", "--out", str(tmp_path), "--w-choice", str(bad_w)], config) == EXIT_USAGE
    bad_graph = tmp_path / "g.g6"
    bad_graph.write_text("I he\n")
    assert run(["verify", "srg", "--out", str(tmp_path), "--graph1", str(bad_graph)], config) == EXIT_USAGE
    assert run(["verify", "srg", "--out", str(tmp_path), "--graph1", str(tmp_path / "none.g6")],
               config) == EXIT_USAGE


def test_unknown_suite_is_a_usage_error(config):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "everything"], config)
    assert exc.value.code == 2


@pytest.mark.slow
def test_verify_switching_checks_cospectrality(tmp_path, config):
    out = str(tmp_path / "out")
    assert run(["verify", "switching", "--out", out], config) == EXIT_OK
    checks = {c["name"]: c for c in _certificate(out, "certificate-switching.json")["checks"]}
    assert checks["switched_cospectral"]["status"] == "pass"
    assert checks["switched_cospectral"]["details"] == {"g1": True, "g2": True}
    assert checks["switching_certificate"]["details"]["cospectral"] == {"g1": True, "g2": True}
