"""Shared fixtures: small named posets, spaces, and frames.

The acceptance criteria live in test_acceptance.py; the summary hook at
the bottom reprints one line per criterion after the run so the verdicts
are visible even when pytest captures stdout.
"""

import pytest

from finitetop import (
    FinitePoset,
    FiniteSpace,
    chain_frame,
    frame_from_poset,
    validate_poset,
)


def chain_poset(k, labels=None):
    if labels is None:
        labels = [f"c{i}" for i in range(k)]
    pairs = [(labels[i], labels[i + 1]) for i in range(k - 1)]
    return validate_poset(labels, pairs)


def antichain_poset(k):
    return validate_poset([f"a{i}" for i in range(k)], [])


def grid_poset():
    """The 2x2 grid bottom < a, b < top."""
    return validate_poset(
        ["0", "a", "b", "1"],
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )


def diamond_m3():
    """Bottom, three incomparable middles, top; a lattice, not distributive."""
    pairs = []
    for m in ("a", "b", "c"):
        pairs.append(("0", m))
        pairs.append((m, "1"))
    return validate_poset(["0", "a", "b", "c", "1"], pairs)


def pentagon_n5():
    """Bottom < a < c < top and bottom < b < top; a lattice, not distributive."""
    return validate_poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )


def point_space():
    return FiniteSpace(("p",), (0, 1))


def empty_space():
    return FiniteSpace((), (0,))


def discrete_space(labels):
    points = tuple(labels)
    n = len(points)
    return FiniteSpace(points, tuple(range(1 << n)))


def indiscrete_space(labels):
    points = tuple(labels)
    return FiniteSpace(points, (0, (1 << len(points)) - 1))


def sierpinski():
    """Points x, y with {y} open; the specialization order is x < y."""
    return FiniteSpace(("x", "y"), (0, 2, 3))


@pytest.fixture
def chain3_frame():
    return chain_frame(3)


@pytest.fixture
def b4_frame():
    return frame_from_poset(grid_poset())


_CRITERION_LINES = []


def record_criterion(number, label, passed):
    state = "PASS" if passed else "FAIL"
    _CRITERION_LINES.append((number, f"{state} criterion {number:2d}: {label}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_CRITERION_LINES):
        terminalreporter.write_line(line)
