from __future__ import annotations

from fractions import Fraction
import math
import sys
from itertools import product
from pathlib import Path

import pytest

from qmprinciples.generate import corpus
from qmprinciples.preorder import Instance, Phi, discrete_preorder, total_preorder
from qmprinciples.qspace import validate_space

DATA = Path(__file__).parent / "data"

W3_MATRIX = [[0, 1, 2], [0, 0, 1], [1, 2, 0]]
A, B, C = 0, 1, 2


def broken_axioms(d) -> set[str]:
    """Independent brute-force classifier: every axiom the matrix violates."""
    n = len(d)
    bad = set()
    if n == 0:
        return bad
    den = math.lcm(*(Fraction(v).denominator for r in d for v in r))
    d = [[int(Fraction(v) * den) for v in r] for r in d]
    if any(d[i][j] < 0 for i, j in product(range(n), repeat=2)) or any(d[i][i] != 0 for i in range(n)):
        bad.add("QM1")
    if any(d[i][k] > d[i][j] + d[j][k] for i, j, k in product(range(n), repeat=3)):
        bad.add("QM2")
    if any(i != j and d[i][j] == 0 and d[j][i] == 0 for i, j in product(range(n), repeat=2)):
        bad.add("QM3")
    return bad


def brute_s(d, rel, phi, x) -> frozenset[int]:
    n = len(d)
    return frozenset(y for y in range(n) if rel[x][y] and phi[y] + d[y][x] <= phi[x])


@pytest.fixture(scope="session")
def w3():
    return validate_space(W3_MATRIX, "abc")


@pytest.fixture(scope="session")
def w3_inst(w3):
    return Instance(w3, total_preorder(3), Phi.of([3, 1, 0]))


@pytest.fixture(scope="session")
def w3_discrete(w3):
    return discrete_preorder(3)


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(200, seed=7)


def F(p, q=1) -> Fraction:
    return Fraction(p, q)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in mod.CRITERIA:
        if name in mod.RESULTS:
            terminalreporter.write_line(mod.format_line(name))
