"""Shared fixtures: tiny datasets built through the primary CLI."""

import shutil
import subprocess
import sys

import pytest


def primary_cli(*args):
    exe = shutil.which("linehint")
    command = [exe, *map(str, args)] if exe else [sys.executable, "-m", "linehint.cli", *map(str, args)]
    proc = subprocess.run(command, capture_output=True, text=True)
    assert proc.returncode == 0, f"primary CLI failed: {proc.stderr}"
    return proc


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    """Five fixture source images from the primary toolkit."""
    root = tmp_path_factory.mktemp("corpus")
    primary_cli("fixtures", "generate", root, "--count", "5", "--seed", "21")
    return root


@pytest.fixture(scope="session")
def aligned_dataset(corpus, tmp_path_factory):
    """Aligned-layout dataset with 4 train pairs (and 1 test input)."""
    out = tmp_path_factory.mktemp("data") / "aligned"
    primary_cli("dataset", "build", corpus, out, "--layout", "aligned",
                "--split", "0.8", "--seed", "21")
    return out


@pytest.fixture(scope="session")
def unpaired_dataset(corpus, tmp_path_factory):
    """Unpaired-layout dataset from the same corpus."""
    out = tmp_path_factory.mktemp("data") / "unpaired"
    primary_cli("dataset", "build", corpus, out, "--layout", "unpaired",
                "--split", "0.8", "--seed", "21")
    return out
