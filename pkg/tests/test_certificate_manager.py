#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import os

import pytest
import yaml

from certificate_manager import (
    STATUS_INCONCLUSIVE, Certificate, CertificateManager, InputFileError, graph_digest,
    graph_sidecar, load_partition, load_w_choice, read_magic_unitary, write_magic_unitary,
)
from graph_io import load_graph
from switching import v15_partition


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_certificate_statuses():
    cert = Certificate("verify demo", {"seed": 0}, artifact="v0.1.0")
    cert.add("first", "a claim", True, seconds=0.5)
    cert.add("second", "a bounded claim", STATUS_INCONCLUSIVE)
    assert cert.passed
    cert.add("third", "a false claim", False, {"why": {3, 1, 2}})
    assert not cert.passed
    assert [c.name for c in cert.failed] == ["third"]

    data = cert.to_dict()
    assert data["artifact_git_describe"] == "v0.1.0"
    assert data["summary"] == {"total": 3, "failed": ["third"], "inconclusive": ["second"]}
    assert data["checks"][2]["details"] == {"why": [1, 2, 3]}
    assert data["timing"]["first"] == 0.5
    assert "timing" not in cert.to_dict(include_timing=False)
    assert cert.to_text().endswith("FAIL (1 checks)")


def test_certificates_written_as_json_and_yaml(tmp_path):
    cert = Certificate("verify demo", artifact="v0.1.0")
    cert.add("only", "claim", True)
    json_path = CertificateManager(str(tmp_path / "j")).write_certificate(cert, "certificate-demo")
    yaml_path = CertificateManager(str(tmp_path / "y"), "yaml").write_certificate(cert, "certificate-demo")
    assert json_path.endswith(".json") and yaml_path.endswith(".yaml")
    with open(json_path) as f:
        from_json = json.load(f)
    with open(yaml_path) as f:
        from_yaml = yaml.safe_load(f)
    assert from_json == from_yaml
    assert from_json["checks"][0]["status"] == "pass"


def test_graph_and_sidecar(tmp_path, partition, g_e8):
    manager = CertificateManager(str(tmp_path))
    paths = manager.write_graph(g_e8, "g_e8", "graph6", graph_sidecar(partition))
    assert load_graph(paths[0]) == g_e8
    with open(paths[1]) as f:
        side = yaml.safe_load(f)
    assert side["sha256_graph6"] == graph_digest(g_e8)
    assert side["edges"] == 120 * 63 // 2
    assert side["vertex_labels"][0] == partition.lines[0].label
    assert len(side["cells"]["V15"]) == 8


def test_load_w_choice(tmp_path, partition, w_choice):
    labels = [rep.label for rep in w_choice.reps]
    body = "\n".join(f'  - "{x}"' for x in labels)
    path = _write(tmp_path, "w.yaml", "w:\n" + body + "\n")
    assert load_w_choice(path, partition) == w_choice

    labels[1] = labels[0]
    body = "\n".join(f'  - "{x}"' for x in labels)
    path = _write(tmp_path, "bad.yaml", "w:\n" + body + "\n")
    with pytest.raises(InputFileError) as exc:
        load_w_choice(path, partition)
    assert exc.value.line == 3
    assert "not in cell V2" in str(exc.value)


def test_load_w_choice_errors(tmp_path, partition):
    with pytest.raises(InputFileError) as exc:
        load_w_choice(_write(tmp_path, "short.yaml", "- e1-e2\n- e1-e3\n"), partition)
    assert exc.value.line == 1
    with pytest.raises(InputFileError) as exc:
        load_w_choice(_write(tmp_path, "broken.yaml", "w: [e1-e2,\n  e1-e3\n"), partition)
    assert exc.value.line is not None
    with pytest.raises(InputFileError):
        load_w_choice(str(tmp_path / "missing.yaml"), partition)


def test_load_partition_by_orbits(tmp_path, partition):
    text = "cell_orbits:\n" + "".join(f"  - [{c}]\n" for c in range(1, 15)) + "d_orbits: [15]\n"
    p = load_partition(_write(tmp_path, "p.yaml", text), 120, partition)
    assert p == v15_partition(partition)


def test_load_partition_errors(tmp_path):
    with pytest.raises(InputFileError) as exc:
        load_partition(_write(tmp_path, "p.yaml", "cells:\n  - [0, 1]\n  - [2, a]\nd: []\n"), 3)
    assert exc.value.line == 3
    with pytest.raises(InputFileError):
        load_partition(_write(tmp_path, "q.yaml", "cells:\n  - [0, 1]\nd: [1]\n"), 2)
    with pytest.raises(InputFileError):
        load_partition(_write(tmp_path, "r.yaml", "- 1\n"), 2)


def test_magic_unitary_file(tmp_path, magic_u):
    path = write_magic_unitary(magic_u, str(tmp_path / "u.json"))
    loaded = read_magic_unitary(path)
    assert loaded == magic_u
    assert loaded.transporter_words[0][0][0] == "III"
    assert loaded.common_denominator == 8


def test_malformed_magic_unitary_file(tmp_path):
    path = _write(tmp_path, "u.json", json.dumps({"n": 2, "cells": [[0, 1]], "labels": ["C1"],
                                                  "entries": []}))
    with pytest.raises(InputFileError):
        read_magic_unitary(path)
    assert os.path.exists(path)
