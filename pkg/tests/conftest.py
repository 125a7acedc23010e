import shutil
from pathlib import Path

import pytest

from divplan.features import FeatureConfig, parse_addinfo
from divplan.grounding import ground
from divplan.pddl import parse_domain, parse_problem

DATA = Path(__file__).resolve().parents[1] / "src" / "divplan" / "data"
TOYS = DATA / "toys"

requires_solver = pytest.mark.skipif(shutil.which("z3") is None, reason="z3 binary not available")


def load(domain, problem, features=None):
    """Ground a fixture; names are resolved under the package data directory."""

    def path(name, ext=".pddl"):
        p = Path(name)
        if p.exists():
            return p
        for base in (DATA, TOYS):
            for cand in (base / name, base / f"{name}{ext}"):
                if cand.exists():
                    return cand
        raise FileNotFoundError(name)

    cfg = parse_addinfo(path(features, ".json").read_text()) if features else FeatureConfig()
    dom = parse_domain(path(domain).read_text())
    prob = parse_problem(path(problem).read_text(), dom, cfg)
    return ground(dom, prob), cfg


@pytest.fixture
def chain():
    return load("chain-domain", "chain")[0]


@pytest.fixture(scope="session")
def rovers_two():
    return load("rovers-domain", "rovers-two", "rovers-grid")
