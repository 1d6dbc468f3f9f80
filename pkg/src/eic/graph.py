"""Problem graphs and the undirected graph toolkit built on them.

Vertex sets and adjacency rows are int bitsets over vertex indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import SizeError
from .gf2 import bits, popcount
from .limits import DEFAULT_LIMITS
from .problem import EicProblem, RequirementPair, requirement_pairs


class EdgeKind(enum.Enum):
    HAS = "has"
    SAME_BLOCK = "same-block"
    BOTH = "both"  # unreachable for valid problems: B[u,a] = 0 whenever R[u,a] = 1


class ViewMode(enum.Enum):
    MUTUAL = "mutual"
    ANY = "any"


@dataclass(frozen=True)
class ProblemGraph:
    vertices: tuple[RequirementPair, ...]
    has_out: tuple[int, ...]   # HasEdge out-neighbours per vertex
    same_out: tuple[int, ...]  # SameBlockEdge neighbours per vertex (symmetric)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def out(self, v: int) -> int:
        return self.has_out[v] | self.same_out[v]

    def has_edge(self, v: int, w: int) -> bool:
        return bool((self.out(v) >> w) & 1)

    def edge_kind(self, v: int, w: int) -> EdgeKind | None:
        h = (self.has_out[v] >> w) & 1
        s = (self.same_out[v] >> w) & 1
        if h and s:
            return EdgeKind.BOTH
        if h:
            return EdgeKind.HAS
        if s:
            return EdgeKind.SAME_BLOCK
        return None

    def edges(self) -> list[tuple[int, int, EdgeKind]]:
        out = []
        for v in range(self.size):
            for w in bits(self.out(v)):
                out.append((v, w, self.edge_kind(v, w)))
        return out

    def index(self, pair: tuple[int, int]) -> int:
        return self.vertices.index(RequirementPair(*pair))

    def to_dot(self, node_names: Sequence[str] | None = None, block_names: Sequence[str] | None = None) -> str:
        """Graphviz text: HasEdges solid, SameBlockEdges dashed (drawn once, undirected)."""

        def label(pair: RequirementPair) -> str:
            u = node_names[pair.node] if node_names else str(pair.node)
            a = block_names[pair.block] if block_names else str(pair.block)
            return f"{u}:{a}"

        lines = ["digraph problem {"]
        for i, pair in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{label(pair)}"];')
        for v, w, kind in self.edges():
            if kind is EdgeKind.SAME_BLOCK:
                if v < w:
                    lines.append(f"  v{v} -> v{w} [style=dashed, dir=both];")
            else:
                lines.append(f"  v{v} -> v{w};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_problem_graph(p: EicProblem) -> ProblemGraph:
    verts = requirement_pairs(p)
    has_out, same_out = [], []
    for i, (u, a) in enumerate(verts):
        h = s = 0
        for j, (_, b) in enumerate(verts):
            if i == j:
                continue
            if (p.has.rows[u] >> b) & 1:
                h |= 1 << j
            if a == b:
                s |= 1 << j
        has_out.append(h)
        same_out.append(s)
    return ProblemGraph(tuple(verts), tuple(has_out), tuple(same_out))


def sender_neighborhood(g: ProblemGraph, p: EicProblem, u: int) -> int:
    """Vertices (w, b) whose block b node ``u`` holds, as a bitset."""
    if not 0 <= u < p.n:
        raise IndexError(u)
    row = p.has.rows[u]
    acc = 0
    for i, (_, b) in enumerate(g.vertices):
        if (row >> b) & 1:
            acc |= 1 << i
    return acc


@dataclass(frozen=True)
class UndirectedView:
    n: int
    adj: tuple[int, ...]
    mode: ViewMode | None = None

    def has_edge(self, v: int, w: int) -> bool:
        return bool((self.adj[v] >> w) & 1)

    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def complement(self) -> "UndirectedView":
        full = (1 << self.n) - 1
        return UndirectedView(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def induced(self, vertex_set: int) -> tuple["UndirectedView", list[int]]:
        """Induced subgraph on a bitset; returns the view and local->global map."""
        verts = list(bits(vertex_set))
        pos = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            row = 0
            for w in bits(self.adj[v] & vertex_set):
                row |= 1 << pos[w]
            adj.append(row)
        return UndirectedView(len(verts), tuple(adj), self.mode), verts


def undirected_view(g: ProblemGraph, mode: ViewMode | str) -> UndirectedView:
    mode = ViewMode(mode)
    n = g.size
    out = [g.out(v) for v in range(n)]
    adj = []
    for v in range(n):
        row = 0
        for w in range(n):
            if w == v:
                continue
            fwd, back = (out[v] >> w) & 1, (out[w] >> v) & 1
            if (fwd and back) if mode is ViewMode.MUTUAL else (fwd or back):
                row |= 1 << w
        adj.append(row)
    return UndirectedView(n, tuple(adj), mode)


def from_edges(n: int, edges: Sequence[tuple[int, int]]) -> UndirectedView:
    adj = [0] * n
    for v, w in edges:
        if v != w:
            adj[v] |= 1 << w
            adj[w] |= 1 << v
    return UndirectedView(n, tuple(adj))


def _bk_pivot(adj: Sequence[int], r: int, p: int, x: int, out: list[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    pivot = max(bits(p | x), key=lambda u: popcount(p & adj[u]))
    for v in bits(p & ~adj[pivot]):
        _bk_pivot(adj, r | (1 << v), p & adj[v], x & adj[v], out)
        p &= ~(1 << v)
        x |= 1 << v


def maximal_cliques(h: UndirectedView) -> list[frozenset[int]]:
    """All inclusion-maximal cliques, largest first, ties lexicographic."""
    if h.n == 0:
        return []
    found: list[int] = []
    _bk_pivot(h.adj, 0, (1 << h.n) - 1, 0, found)
    keyed = sorted((tuple(bits(c)) for c in found), key=lambda t: (-len(t), t))
    return [frozenset(t) for t in keyed]


def _max_clique(adj: Sequence[int], n: int) -> int:
    best = [0, 0]  # size, bitset

    def expand(r: int, size: int, p: int) -> None:
        if not p:
            if size > best[0]:
                best[0], best[1] = size, r
            return
        if size + popcount(p) <= best[0]:
            return
        while p:
            if size + popcount(p) <= best[0]:
                return
            v = p.bit_length() - 1
            expand(r | (1 << v), size + 1, p & adj[v])
            p &= ~(1 << v)

    expand(0, 0, (1 << n) - 1)
    return best[1]


def max_clique(h: UndirectedView, limit: int | None = None) -> frozenset[int]:
    limit = DEFAULT_LIMITS.omega_vertices if limit is None else limit
    if h.n > limit:
        raise SizeError(f"exact clique number needs n <= {limit}, got {h.n}", "omega_vertices", h.n, limit)
    return frozenset(bits(_max_clique(h.adj, h.n)))


def clique_number(h: UndirectedView, limit: int | None = None) -> int:
    return len(max_clique(h, limit))


def greedy_clique(h: UndirectedView) -> frozenset[int]:
    """A maximal clique grown from the highest-degree vertex; a cheap lower bound."""
    if h.n == 0:
        return frozenset()
    order = sorted(range(h.n), key=lambda v: (-popcount(h.adj[v]), v))
    clique, cand = 0, (1 << h.n) - 1
    for v in order:
        if (cand >> v) & 1:
            clique |= 1 << v
            cand &= h.adj[v]
    return frozenset(bits(clique))


def greedy_coloring(h: UndirectedView) -> list[int]:
    """Largest-degree-first sequential coloring."""
    order = sorted(range(h.n), key=lambda v: (-popcount(h.adj[v]), v))
    color = [-1] * h.n
    for v in order:
        used = {color[w] for w in bits(h.adj[v]) if color[w] >= 0}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def _exact_coloring(h: UndirectedView, lower: int, start: list[int]) -> list[int]:
    n, adj = h.n, h.adj
    best = {"k": max(start) + 1 if n else 0, "col": start[:]}
    color = [-1] * n
    classes: list[int] = []  # vertex bitset per color

    def pick() -> int:
        chosen, key = -1, None
        for v in range(n):
            if color[v] >= 0:
                continue
            sat = sum(1 for c in classes if c & adj[v])
            deg = sum(1 for w in bits(adj[v]) if color[w] < 0)
            k = (sat, deg, -v)
            if key is None or k > key:
                chosen, key = v, k
        return chosen

    def rec(colored: int) -> bool:
        if colored == n:
            best["k"], best["col"] = len(classes), color[:]
            return best["k"] <= lower
        v = pick()
        for c in range(len(classes)):
            if not classes[c] & adj[v]:
                color[v] = c
                classes[c] |= 1 << v
                done = rec(colored + 1)
                classes[c] &= ~(1 << v)
                color[v] = -1
                if done:
                    return True
        if len(classes) + 1 < best["k"]:
            color[v] = len(classes)
            classes.append(1 << v)
            done = rec(colored + 1)
            classes.pop()
            color[v] = -1
            if done:
                return True
        return False

    if best["k"] > lower:
        rec(0)
    return best["col"]


def chromatic_number(h: UndirectedView, mode: str = "exact", limit: int | None = None) -> tuple[int, list[int]]:
    """Return ``(k, coloring)``; exact mode is branch and bound, greedy an upper bound."""
    if h.n == 0:
        return 0, []
    greedy = greedy_coloring(h)
    if mode == "greedy":
        return max(greedy) + 1, greedy
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    limit = DEFAULT_LIMITS.chi_vertices if limit is None else limit
    if h.n > limit:
        raise SizeError(f"exact chromatic number needs n <= {limit}, got {h.n}", "chi_vertices", h.n, limit)
    lower = len(greedy_clique(h)) if h.n > DEFAULT_LIMITS.omega_vertices else clique_number(h)
    col = _exact_coloring(h, lower, greedy)
    return max(col) + 1, col


def is_proper_coloring(h: UndirectedView, coloring: Sequence[int]) -> bool:
    return all(coloring[v] != coloring[w] for v in range(h.n) for w in bits(h.adj[v]))


def clique_cover(h: UndirectedView, mode: str = "exact", limit: int | None = None) -> list[frozenset[int]]:
    """Minimum (or greedy) partition of the vertices into cliques of ``h``."""
    k, col = chromatic_number(h.complement(), mode, limit)
    return [frozenset(v for v in range(h.n) if col[v] == c) for c in range(k)]


class SeparationCheck(NamedTuple):
    holds: bool
    chi_any: int
    chi_bar_mutual: int
    num_vertices: int


def check_separation_condition(g: ProblemGraph, limit: int | None = None) -> SeparationCheck:
    """Whether (chi(G) - 1) * chi(complement G) < |V|.

    chi(G) is taken on the AnyEdge view, chi of the complement on the
    complement of the MutualEdges view (a partition into mutual cliques).
    """
    chi_g, _ = chromatic_number(undirected_view(g, ViewMode.ANY), "exact", limit)
    chi_bar, _ = chromatic_number(undirected_view(g, ViewMode.MUTUAL).complement(), "exact", limit)
    nv = g.size
    return SeparationCheck((chi_g - 1) * chi_bar < nv, chi_g, chi_bar, nv)
