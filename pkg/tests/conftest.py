"""Small named graphs shared by the tests, and the acceptance summary."""

from __future__ import annotations

import pytest

from circlegraphs.multigraph import Multigraph

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def base_square():
    return Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p2", 1), ("p2", "p3", 1), ("p4", "p3", 1), ("p1", "p4", 1)])


def base_octagon():
    ids = [f"p{i}" for i in range(1, 9)]
    edges = [
        ("p1", "p2", 1), ("p2", "p3", 1), ("p4", "p3", 1), ("p5", "p4", 1),
        ("p5", "p6", 1), ("p6", "p7", 1), ("p8", "p7", 1), ("p1", "p8", 1),
    ]
    return Multigraph(ids, edges)


def plane_triangle(a=1, b=1):
    return Multigraph(["p1", "p2", "p3"], [("p1", "p2", a), ("p2", "p3", b), ("p1", "p3", a + b)])


def hirzebruch_square_pos(c, d, e):
    return Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p2", d), ("p1", "p3", c), ("p2", "p4", e), ("p3", "p4", d)])


def hirzebruch_square_neg(c, d, e):
    return Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p3", c), ("p1", "p2", d), ("p3", "p4", d), ("p4", "p2", e)])


def congruence_square(f, g, h):
    return Multigraph(["p1", "p2", "p3", "p4"], [("p1", "p2", f), ("p1", "p3", g), ("p2", "p4", g), ("p3", "p4", h)])


@pytest.fixture
def semifree_square():
    return base_square()


@pytest.fixture
def semifree_octagon():
    return base_octagon()


@pytest.fixture
def unit_triangle():
    return plane_triangle()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
