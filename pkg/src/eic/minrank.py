"""Exact restricted minrank over GF(2) and its graph bounds.

A candidate solution assigns every requirement pair (u, a) a row of length
m that is 1 at column a, free on the blocks u has, and 0 elsewhere; the
optimal centralized length is the least rank such a matrix can have.

The exact search walks the rows depth first while maintaining the span of
the rows chosen so far.  When some admissible value for the next row already
lies in that span it is taken without branching: any completion of a branch
that enlarges the span has a span containing the one obtained by staying
put, so staying put is never worse.  Otherwise the search branches once per
distinct enlarged span (one per coset), pruning at the incumbent rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SizeError
from .gf2 import BitMatrix, Echelon, bits, popcount, rank_of_rows
from .graph import (
    ViewMode,
    build_problem_graph,
    chromatic_number,
    clique_number,
    greedy_clique,
    undirected_view,
)
from .limits import DEFAULT_LIMITS, Limits
from .problem import EicProblem, RequirementPair, check_disjoint, requirement_pairs


@dataclass(frozen=True)
class FittingSpace:
    """Admissible rows: column ``fixed[i]`` forced to 1, ``free[i]`` unconstrained."""

    vertices: tuple[RequirementPair, ...]
    fixed: tuple[int, ...]
    free: tuple[int, ...]
    m: int
    requested: int

    @property
    def log_size(self) -> int:
        return sum(popcount(f) for f in self.free)

    @property
    def effective_free(self) -> tuple[int, ...]:
        """Free columns of blocks nobody requests never reach the fitted square
        matrix, so the search pins them to zero."""
        return tuple(f & self.requested for f in self.free)

    def contains(self, row_index: int, row: int) -> bool:
        allowed = (1 << self.fixed[row_index]) | self.free[row_index]
        return bool((row >> self.fixed[row_index]) & 1) and not row & ~allowed

    def expand(self, a: BitMatrix) -> BitMatrix:
        """Column repetition: the |P| x |P| matrix whose column (w, b) is column b of ``a``."""
        size = len(self.vertices)
        rows = []
        for r in a.rows:
            row = 0
            for j, (_, b) in enumerate(self.vertices):
                if (r >> b) & 1:
                    row |= 1 << j
            rows.append(row)
        return BitMatrix(tuple(rows), size)


def fitting_space(p: EicProblem) -> FittingSpace:
    verts = tuple(requirement_pairs(p))
    return FittingSpace(
        vertices=verts,
        fixed=tuple(a for _, a in verts),
        free=tuple(p.has.rows[u] for u, _ in verts),
        m=p.m,
        requested=p.requested_mask(),
    )


@dataclass(frozen=True)
class MinrankResult:
    rank: int
    witness: BitMatrix
    basis_rows: tuple[int, ...]
    lower_bound: int
    upper_bound: int
    exact: bool
    nodes: int = 0
    vertices: tuple[RequirementPair, ...] = field(default=(), repr=False)

    def basis(self) -> list[int]:
        return [self.witness.rows[i] for i in self.basis_rows]


def minrank_bounds(p: EicProblem, limits: Limits = DEFAULT_LIMITS) -> tuple[int, int]:
    lower, upper, _ = _bounds(p, limits)
    return lower, upper


def _bounds(p: EicProblem, limits: Limits) -> tuple[int, int, list[int]]:
    """Independence lower bound, mutual clique-cover upper bound and its witness rows."""
    g = build_problem_graph(p)
    if g.size == 0:
        return 0, 0, []
    indep = undirected_view(g, ViewMode.ANY).complement()
    if indep.n <= limits.omega_vertices:
        lower = clique_number(indep, limits.omega_vertices)
    else:
        lower = len(greedy_clique(indep))
    cover_graph = undirected_view(g, ViewMode.MUTUAL).complement()
    mode = "exact" if cover_graph.n <= limits.chi_vertices else "greedy"
    k, color = chromatic_number(cover_graph, mode, limits.chi_vertices)
    # every vertex of a mutual clique gets the clique's block indicator as its row
    indicator = [0] * k
    for v, c in enumerate(color):
        indicator[c] |= 1 << g.vertices[v].block
    rows = [indicator[c] for c in color]
    return lower, k, rows


def _basis_rows(rows: list[int]) -> tuple[int, ...]:
    ech = Echelon()
    return tuple(i for i, r in enumerate(rows) if ech.add(r))


class _Budget(Exception):
    pass


def restricted_minrank(
    p: EicProblem,
    budget: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> MinrankResult:
    """Least rank of a fitting-space matrix, with a witness attaining it.

    ``budget`` caps the number of search nodes; when it runs out the best
    matrix found so far is returned with ``exact=False``.  Without a budget a
    fitting space larger than ``2**limits.minrank_bits`` raises SizeError.
    """
    check_disjoint(p)
    space = fitting_space(p)
    if space.log_size > limits.minrank_bits and budget is None:
        raise SizeError(
            f"fitting space has 2^{space.log_size} matrices, exact limit is 2^{limits.minrank_bits}",
            "minrank_bits",
            space.log_size,
            limits.minrank_bits,
        )
    nv = len(space.vertices)
    lower, upper, cover_rows = _bounds(p, limits)
    if nv == 0:
        return MinrankResult(0, BitMatrix((), p.m), (), 0, 0, True, 0, ())

    # The cover is achievable, so the search is complete if it admits rank
    # <= cover rank; the witness is then the first optimum in search order
    # rather than whichever bound happened to be tight.
    cover_rank = rank_of_rows(cover_rows)
    free = space.effective_free
    # forced rows first; ties keep canonical order
    order = sorted(range(nv), key=lambda i: (popcount(free[i]), i))
    rows = [0] * nv
    state = {"best": cover_rank + 1, "rows": list(cover_rows), "nodes": 0}

    def descend(depth: int, ech: Echelon) -> bool:
        """Returns True once the lower bound is met (search can stop)."""
        if depth == nv:
            state["best"], state["rows"] = len(ech), rows[:]
            return state["best"] <= lower
        state["nodes"] += 1
        if budget is not None and state["nodes"] > budget:
            raise _Budget
        i = order[depth]
        fixed = 1 << space.fixed[i]
        full = fixed | free[i]
        # generators of the free part, reduced modulo the current span
        gens: list[tuple[int, int]] = []  # (reduced vector, original column mask)
        for b in bits(free[i]):
            r, mask = ech.reduce(1 << b), 1 << b
            for gr, gm in gens:
                if r ^ gr < r:
                    r ^= gr
                    mask ^= gm
            if r:
                gens.append((r, mask))
                gens.sort(reverse=True)
        base = ech.reduce(full)
        t, fix = base, 0
        for gr, gm in gens:
            if t ^ gr < t:
                t ^= gr
                fix ^= gm
        if t == 0:
            rows[i] = full ^ fix
            return descend(depth + 1, ech)
        if len(ech) + 1 >= state["best"]:
            return False
        # one branch per coset, Gray-code order starting from all free bits set
        row = full
        for step in range(1 << len(gens)):
            if step:
                flip = (step & -step).bit_length() - 1
                row ^= gens[flip][1]
            rows[i] = row
            nxt = ech.copy()
            nxt.add(row)
            if descend(depth + 1, nxt):
                return True
            if len(ech) + 1 >= state["best"]:
                return False
        return False

    exact = True
    try:
        descend(0, Echelon())
    except _Budget:
        exact = False
    witness_rows = state["rows"]
    witness = BitMatrix(tuple(witness_rows), p.m)
    rk = rank_of_rows(witness_rows)
    assert rk == min(state["best"], cover_rank)
    return MinrankResult(
        rank=rk,
        witness=witness,
        basis_rows=_basis_rows(witness_rows),
        lower_bound=lower,
        upper_bound=upper,
        exact=exact,
        nodes=state["nodes"],
        vertices=space.vertices,
    )


def witness_fits(p: EicProblem, witness: BitMatrix) -> bool:
    """Direct check that the column-repeated witness fits the problem graph."""
    g = build_problem_graph(p)
    space = fitting_space(p)
    square = space.expand(witness)
    for k in range(g.size):
        row = square.rows[k]
        if not (row >> k) & 1:
            return False
        if row & ~(g.out(k) | (1 << k)):
            return False
    return True
