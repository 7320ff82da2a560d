#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Version string recorded in certificates.
"""

import logging
import os
import subprocess
from typing import Optional

logger = logging.getLogger(__name__)

PACKAGE_VERSION = "0.1.0"

_REPO_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


def _git_output(*args: str, repo_dir: str = _REPO_DIR) -> Optional[str]:
    """Run a git command and return its stripped stdout, or None on failure."""
    cmd = ["git", "-C", repo_dir] + list(args)
    try:
        result = subprocess.run(
            cmd, capture_output=True, text=True, timeout=10,
        )
        if result.returncode == 0:
            return result.stdout.strip()
        logger.debug("git %s -> %d: %s", " ".join(args), result.returncode, result.stderr.strip())
        return None
    except (subprocess.TimeoutExpired, FileNotFoundError) as exc:
        logger.warning("git command failed: %s", exc)
        return None


def git_describe(repo_dir: str = _REPO_DIR) -> str:
    """``git describe --always --dirty``, else the package version."""
    described = _git_output("describe", "--always", "--dirty", repo_dir=repo_dir)
    return described or f"v{PACKAGE_VERSION}"
