import sys
from dataclasses import dataclass, field
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from monores.audit import audit
from monores.corpus import forged_corpus, random_corpus, tight_seeds
from monores.driver import Exhaustive, TraceTree, WorstCase, run


@dataclass
class Played:
    tag: str
    state: object
    worst: object
    tree: TraceTree
    findings: list = field(default_factory=list)
    episodes: list = field(default_factory=list)

    @property
    def paths(self):
        return [self.worst] + self.tree.paths()


def play(tag, st, budget=2000):
    rec = Played(tag, st, run(st, WorstCase()), run(st, Exhaustive(budget)))
    for t in rec.paths:
        fs, eps = audit(t.steps, st.q)
        rec.findings += fs
        rec.episodes += eps
    return rec


@pytest.fixture(scope="session")
def corpus():
    out = [play("random", st) for st in random_corpus(seed=0, count=200)]
    out += [play("forged", st) for st in forged_corpus()]
    out += [play("tight", st) for st in tight_seeds(seed=0)]
    return out


@pytest.fixture(scope="session")
def findings(corpus):
    return [f for rec in corpus for f in rec.findings]


VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
