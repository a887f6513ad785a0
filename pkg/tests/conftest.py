import hashlib
import random
from fractions import Fraction
from pathlib import Path

import pytest

from localmaclaurin.graph import Graph, parse_graph6

FIXTURES = Path(__file__).parent / "fixtures"
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def _checksums() -> dict[str, str]:
    out = {}
    for line in (FIXTURES / "SHA256SUMS").read_text().splitlines():
        digest, name = line.split()
        out[name] = digest
    return out


def load_corpus(name: str) -> list[str]:
    path = FIXTURES / name
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    assert digest == _checksums()[name], f"{name} does not match its recorded checksum"
    return [ln for ln in path.read_text().splitlines() if ln.strip()]


@pytest.fixture(scope="session")
def corpus_lines() -> list[str]:
    return load_corpus("graphs_n1-6.g6")


@pytest.fixture(scope="session")
def corpus(corpus_lines) -> list[Graph]:
    return [parse_graph6(line) for line in corpus_lines]


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_rational(rng: random.Random, lo: int = 1, hi: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0][2:])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
