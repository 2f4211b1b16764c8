import random

import pytest

from treeburn.tree import Tree
from treeburn.topology import Topology

# Filled by the acceptance suite; echoed after the run so the per-criterion
# PASS/FAIL lines survive pytest's output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_tree(rng: random.Random, n: int) -> Tree:
    """Random labelled tree on vertices 0..n-1 (uniform attachment)."""
    if n == 1:
        return Tree([], vertices=[0])
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return Tree(edges)


def random_topology(rng: random.Random, max_branch: int = 5) -> Topology:
    """Random homeomorphically irreducible tree with <= max_branch branch
    vertices, built from a random branch skeleton plus pendant leaves."""
    k = rng.randint(1, max_branch)
    skeleton = [(rng.randrange(i), i) for i in range(1, k)]
    skel_deg = {i: 0 for i in range(k)}
    for u, v in skeleton:
        skel_deg[u] += 1
        skel_deg[v] += 1
    edges = list(skeleton)
    nxt = k
    for i in range(k):
        want = max(3, skel_deg[i] + rng.randint(0, 2))
        for _ in range(want - skel_deg[i]):
            edges.append((i, nxt))
            nxt += 1
    return Topology(Tree(edges))


@pytest.fixture
def rng():
    return random.Random(20260826)
