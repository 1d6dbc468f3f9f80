"""Named instances used in tests, docs and the ``eic instance`` command."""

from __future__ import annotations

from importlib import resources

from .problem import EicProblem, from_side_info_digraph, parse

# FIG2A labels: nodes u, w, x, y and blocks D1..D4 map to indices 0..3.
FIG2A_NODES = ("u", "w", "x", "y")
FIG2A_BLOCKS = ("D1", "D2", "D3", "D4")


def swap2() -> EicProblem:
    """Two nodes, each holding the block the other wants."""
    return from_side_info_digraph(2, [(0, 1), (1, 0)])


def cycle3() -> EicProblem:
    """Node i needs block i and has block (i + 1) mod 3."""
    return from_side_info_digraph(3, [(i, (i + 1) % 3) for i in range(3)])


def clique3() -> EicProblem:
    return from_side_info_digraph(3, [(i, j) for i in range(3) for j in range(3) if i != j])


def fig2a() -> EicProblem:
    """Four-node single-unicast instance: u wants D2, w wants D1, x wants D3, y wants D4."""
    return EicProblem.from_strings(
        has=["1001", "0100", "0100", "1110"],
        needs=["0100", "1000", "0010", "0001"],
    )


def sep5() -> EicProblem:
    """Five-node instance with (C), (D), (T) = 3, 4, 5, found by :mod:`eic.separation`."""
    text = resources.files("eic").joinpath("data").joinpath("sep5.json").read_text(encoding="utf-8")
    return parse(text)


NAMED = {
    "swap2": swap2,
    "cycle3": cycle3,
    "clique3": clique3,
    "fig2a": fig2a,
    "sep5": sep5,
}
