"""Centralized, decentralized (2x) and task-based broadcast solutions.

Decoding coefficient vectors are int bitsets laid out over the stacked
matrix a receiver uses: message rows first (bit ``i`` is the ``i``-th
stacked message), then the m rows of ``diag(B_u)`` at bits ``H .. H+m-1``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import CoverError, ParseError, SizeError
from .gf2 import BitMatrix, Echelon, bits, express_in_rowspan, from_bitstring, popcount, to_bitstring
from .graph import ViewMode, build_problem_graph, maximal_cliques, sender_neighborhood, undirected_view
from .limits import DEFAULT_LIMITS, Limits
from .minrank import MinrankResult, restricted_minrank
from .problem import EicProblem, RequirementPair, check_valid, requirement_pairs


@dataclass(frozen=True)
class CentralizedSolution:
    m: int
    beta: tuple[int, ...]
    decoding: dict[RequirementPair, int] = field(default_factory=dict)
    exact: bool = True

    @property
    def length(self) -> int:
        return len(self.beta)


@dataclass(frozen=True)
class LinearBroadcastSolution:
    m: int
    betas: tuple[tuple[int, ...], ...]  # one tuple of rows per node
    decoding: dict[RequirementPair, int] = field(default_factory=dict)
    exact: bool = True

    @property
    def length(self) -> int:
        return sum(len(b) for b in self.betas)

    def stacked(self) -> list[int]:
        return [r for b in self.betas for r in b]


@dataclass(frozen=True)
class NeighborhoodPartition:
    parts: tuple[frozenset[int], ...]  # vertex indices each sender is responsible for

    def responsible(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}


@dataclass(frozen=True)
class TaskBasedSolution:
    m: int
    partition: NeighborhoodPartition
    betas: tuple[tuple[int, ...], ...]
    decoding: dict[RequirementPair, int] = field(default_factory=dict)  # over [beta_i; diag(B_u)]
    exact: bool = True

    @property
    def length(self) -> int:
        return sum(len(b) for b in self.betas)

    def as_broadcast(self) -> LinearBroadcastSolution:
        """The same messages viewed as an ordinary linear broadcast solution."""
        return LinearBroadcastSolution(self.m, self.betas, {}, self.exact)


Solution = CentralizedSolution | LinearBroadcastSolution | TaskBasedSolution


def _basis_decoding(
    p: EicProblem, pairs: Sequence[RequirementPair], rows: Sequence[int], basis: Sequence[int]
) -> dict[RequirementPair, int]:
    """alpha = [lambda | mu] with lambda . basis = A_l and mu = B_u & A_l."""
    beta = BitMatrix(tuple(basis), p.m)
    h = len(basis)
    out = {}
    for (u, a), row in zip(pairs, rows):
        lam = express_in_rowspan(beta, row)
        if lam is None:
            raise AssertionError(f"witness row for ({u},{a}) outside basis span")
        out[RequirementPair(u, a)] = lam | ((p.has.rows[u] & row) << h)
    return out


def solve_centralized(p: EicProblem, limits: Limits = DEFAULT_LIMITS, budget: int | None = None) -> CentralizedSolution:
    res = restricted_minrank(p, budget=budget, limits=limits)
    basis = res.basis()
    decoding = _basis_decoding(p, res.vertices, res.witness.rows, basis)
    return CentralizedSolution(p.m, tuple(basis), decoding, res.exact)


def decentralize(p: EicProblem, res: MinrankResult) -> LinearBroadcastSolution:
    """Split each basis row of a minrank witness into a coded and an uncoded broadcast."""
    betas: list[list[int]] = [[] for _ in range(p.n)]
    uncoded: dict[int, tuple[int, int]] = {}
    plan: list[tuple[tuple[int, int] | None, tuple[int, int]]] = []

    def emit(sender: int, row: int) -> tuple[int, int]:
        if row in betas[sender]:
            return sender, betas[sender].index(row)
        betas[sender].append(row)
        return sender, len(betas[sender]) - 1

    for idx in res.basis_rows:
        u, a = res.vertices[idx]
        row = res.witness.rows[idx]
        coded = row ^ (1 << a)
        coded_at = emit(u, coded) if coded else None
        if a not in uncoded:
            w = next(w for w in range(p.n) if (p.has.rows[w] >> a) & 1)
            uncoded[a] = emit(w, 1 << a)
        plan.append((coded_at, uncoded[a]))

    offsets = list(itertools.accumulate((len(b) for b in betas), initial=0))
    total = offsets[-1]

    def flat(at: tuple[int, int]) -> int:
        return offsets[at[0]] + at[1]

    basis_masks = []
    for coded_at, unc_at in plan:
        mask = 1 << flat(unc_at)
        if coded_at is not None:
            mask ^= 1 << flat(coded_at)
        basis_masks.append(mask)

    beta = BitMatrix(tuple(res.basis()), p.m)
    decoding = {}
    for (u, a), row in zip(res.vertices, res.witness.rows):
        lam = express_in_rowspan(beta, row)
        msg = 0
        for j in bits(lam):
            msg ^= basis_masks[j]
        decoding[RequirementPair(u, a)] = msg | ((p.has.rows[u] & row) << total)
    return LinearBroadcastSolution(p.m, tuple(tuple(b) for b in betas), decoding, res.exact)


def solve_decentralized_2x(p: EicProblem, limits: Limits = DEFAULT_LIMITS, budget: int | None = None) -> LinearBroadcastSolution:
    check_valid(p)
    return decentralize(p, restricted_minrank(p, budget=budget, limits=limits))


def greedy_min_cover(universe: Iterable, sets: Sequence[Iterable]) -> list[int]:
    """Indices of sets chosen by the classic greedy rule (ties: earliest set)."""
    remaining = set(universe)
    frozen = [frozenset(s) for s in sets]
    covered = set().union(*frozen) if frozen else set()
    missing = remaining - covered
    if missing:
        raise CoverError(f"elements {sorted(missing)} are in no candidate set")
    chosen: list[int] = []
    while remaining:
        best, gain = -1, 0
        for i, s in enumerate(frozen):
            g = len(s & remaining)
            if g > gain:
                best, gain = i, g
        chosen.append(best)
        remaining -= frozen[best]
    return chosen


def exact_min_cover(universe: Iterable, sets: Sequence[Iterable], limit: int = DEFAULT_LIMITS.exact_cover_sets) -> list[int]:
    target = frozenset(universe)
    frozen = [frozenset(s) for s in sets]
    if len(frozen) > limit:
        raise SizeError(f"exact min-cover limited to {limit} sets, got {len(frozen)}", "exact_cover_sets", len(frozen), limit)
    missing = target - frozenset().union(*frozen) if frozen else target
    if missing:
        raise CoverError(f"elements {sorted(missing)} are in no candidate set")
    for k in range(len(frozen) + 1):
        for combo in itertools.combinations(range(len(frozen)), k):
            if target <= frozenset().union(*(frozen[i] for i in combo)):
                return list(combo)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class NeighborhoodClique:
    vertices: int   # bitset over problem-graph vertices
    senders: tuple[int, ...]


def neighborhood_cliques(p: EicProblem) -> list[NeighborhoodClique]:
    """Maximal mutual cliques of every sender neighbourhood, with all eligible senders."""
    g = build_problem_graph(p)
    mutual = undirected_view(g, ViewMode.MUTUAL)
    hoods = [sender_neighborhood(g, p, i) for i in range(p.n)]
    found: set[int] = set()
    for hood in hoods:
        if not hood:
            continue
        sub, local = mutual.induced(hood)
        for c in maximal_cliques(sub):
            found.add(sum(1 << local[v] for v in c))
    ordered = sorted(found, key=lambda c: (-popcount(c), tuple(bits(c))))
    return [NeighborhoodClique(c, tuple(i for i, h in enumerate(hoods) if c & ~h == 0)) for c in ordered]


def _subproblem(p: EicProblem, vertices: Sequence[RequirementPair], part: Iterable[int]) -> EicProblem:
    return p.restrict_needs(vertices[v] for v in sorted(part))


def _assemble(p: EicProblem, vertices: Sequence[RequirementPair], parts: Sequence[frozenset[int]], limits: Limits) -> TaskBasedSolution:
    betas: list[tuple[int, ...]] = []
    decoding: dict[RequirementPair, int] = {}
    exact = True
    for part in parts:
        if not part:
            betas.append(())
            continue
        sub = _subproblem(p, vertices, part)
        res = restricted_minrank(sub, limits=limits)
        exact &= res.exact
        basis = res.basis()
        betas.append(tuple(basis))
        decoding.update(_basis_decoding(sub, res.vertices, res.witness.rows, basis))
    return TaskBasedSolution(p.m, NeighborhoodPartition(tuple(parts)), tuple(betas), decoding, exact)


def task_partition(p: EicProblem, cover: str = "greedy", limits: Limits = DEFAULT_LIMITS) -> NeighborhoodPartition:
    """Neighbourhood partition from a min-cover of the neighbourhood cliques.

    Each chosen clique goes to its lowest-index eligible sender; a vertex
    already covered by an earlier chosen clique stays where it is.
    """
    check_valid(p)
    nv = len(requirement_pairs(p))
    cliques = neighborhood_cliques(p)
    sets = [list(bits(c.vertices)) for c in cliques]
    if cover == "greedy":
        chosen = greedy_min_cover(range(nv), sets)
    elif cover == "exact":
        chosen = exact_min_cover(range(nv), sets, limits.exact_cover_sets)
    else:
        raise ValueError(f"unknown cover mode {cover!r}")
    parts = [0] * p.n
    covered = 0
    for idx in chosen:
        c = cliques[idx]
        fresh = c.vertices & ~covered
        parts[c.senders[0]] |= fresh
        covered |= fresh
    return NeighborhoodPartition(tuple(frozenset(bits(x)) for x in parts))


def solve_task_based(p: EicProblem, cover: str = "greedy", limits: Limits = DEFAULT_LIMITS) -> TaskBasedSolution:
    partition = task_partition(p, cover, limits)
    return _assemble(p, requirement_pairs(p), partition.parts, limits)


def solve_with_partition(p: EicProblem, partition: NeighborhoodPartition, limits: Limits = DEFAULT_LIMITS) -> TaskBasedSolution:
    return _assemble(p, requirement_pairs(p), partition.parts, limits)


def exact_task_based_optimal(p: EicProblem, limits: Limits = DEFAULT_LIMITS) -> tuple[int, NeighborhoodPartition]:
    """Minimum over all neighbourhood partitions of the summed per-part minrank."""
    check_valid(p)
    verts = requirement_pairs(p)
    if len(verts) > limits.task_pairs:
        raise SizeError(f"exact (T) limited to {limits.task_pairs} pairs, got {len(verts)}", "task_pairs", len(verts), limits.task_pairs)
    eligible = [p.holders(a) for _, a in verts]
    count = 1
    for e in eligible:
        count *= len(e)
    if count > limits.task_assignments:
        raise SizeError(
            f"exact (T) would enumerate {count} assignments, limit {limits.task_assignments}",
            "task_assignments",
            count,
            limits.task_assignments,
        )

    @lru_cache(maxsize=None)
    def cost(part: int) -> int:
        if not part:
            return 0
        return restricted_minrank(_subproblem(p, verts, bits(part)), limits=limits).rank

    best, best_parts = None, None
    for assign in itertools.product(*eligible):
        parts = [0] * p.n
        for v, s in enumerate(assign):
            parts[s] |= 1 << v
        total = sum(cost(x) for x in parts)
        if best is None or total < best:
            best, best_parts = total, parts
    if best is None:
        return 0, NeighborhoodPartition(tuple(frozenset() for _ in range(p.n)))
    return best, NeighborhoodPartition(tuple(frozenset(bits(x)) for x in best_parts))


def _decodable_all(p: EicProblem, pairs: Sequence[RequirementPair], span: Echelon) -> bool:
    for u, a in pairs:
        e = span.copy()
        for b in bits(p.has.rows[u]):
            e.add(1 << b)
        if not e.contains(1 << a):
            return False
    return True


def exact_decentralized_optimal(p: EicProblem, limits: Limits = DEFAULT_LIMITS) -> int:
    """Shortest decentralized solution by iterative deepening over message sets.

    Only the span of the broadcasts matters, and each message is any nonzero
    combination of one node's blocks, so candidates are the union of those
    spans restricted to requested columns (other columns never help decoding).
    """
    check_valid(p)
    total_bits = sum(p.has_counts())
    if total_bits > limits.dec_bits:
        raise SizeError(f"exact (D) limited to {limits.dec_bits} has-bits, got {total_bits}", "dec_bits", total_bits, limits.dec_bits)
    pairs = requirement_pairs(p)
    if not pairs:
        return 0
    requested = p.requested_mask()
    cands: set[int] = set()
    for row in p.has.rows:
        sub = row & requested
        x = sub
        while x:
            cands.add(x)
            x = (x - 1) & sub
    cand = sorted(cands)
    res = restricted_minrank(p, limits=limits)
    start = res.rank
    # the split-basis construction is always achievable, so never search at or beyond it
    ceiling = decentralize(p, res).length

    def search(k: int, first: int, span: Echelon) -> bool:
        if k == 0:
            return _decodable_all(p, pairs, span)
        for i in range(first, len(cand) - k + 1):
            if span.contains(cand[i]):
                continue
            nxt = span.copy()
            nxt.add(cand[i])
            if search(k - 1, i + 1, nxt):
                return True
        return False

    for length in range(start, ceiling):
        if length > limits.dec_length:
            raise SizeError(f"exact (D) limited to length {limits.dec_length}", "dec_length", length, limits.dec_length)
        if search(length, 0, Echelon()):
            return length
    return ceiling


# ---------------------------------------------------------------- serialization

def _pair_key(pair: RequirementPair) -> str:
    return f"{pair.node}:{pair.block}"


def solution_to_json(sol: Solution, p: EicProblem) -> str:
    m = p.m
    if isinstance(sol, CentralizedSolution):
        doc = {"type": "centralized", "beta": [[to_bitstring(r, m) for r in sol.beta]]}
        width = {k: sol.length + m for k in sol.decoding}
    elif isinstance(sol, TaskBasedSolution):
        doc = {
            "type": "task-based",
            "beta": [[to_bitstring(r, m) for r in b] for b in sol.betas],
            "partition": [sorted(part) for part in sol.partition.parts],
        }
        resp = sol.partition.responsible()
        verts = requirement_pairs(p)
        width = {verts[v]: len(sol.betas[i]) + m for v, i in resp.items()}
    else:
        doc = {"type": "decentralized", "beta": [[to_bitstring(r, m) for r in b] for b in sol.betas]}
        width = {k: sol.length + m for k in sol.decoding}
    doc["decoding"] = {_pair_key(k): to_bitstring(sol.decoding[k], width[k]) for k in sorted(sol.decoding)}
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def solution_from_json(text: str, p: EicProblem) -> Solution:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    kind = doc.get("type")
    try:
        betas = tuple(tuple(from_bitstring(s) for s in sender) for sender in doc["beta"])
        for sender in doc["beta"]:
            for s in sender:
                if len(s) != p.m:
                    raise ParseError(f"beta row {s!r} does not have length {p.m}")
        decoding = {}
        for key, s in doc.get("decoding", {}).items():
            u, a = (int(x) for x in key.split(":"))
            decoding[RequirementPair(u, a)] = from_bitstring(s)
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"malformed solution document: {exc}") from exc
    if kind == "centralized":
        if len(betas) != 1:
            raise ParseError("centralized solution must have exactly one beta block")
        return CentralizedSolution(p.m, betas[0], decoding)
    if kind == "decentralized":
        return LinearBroadcastSolution(p.m, betas, decoding)
    if kind == "task-based":
        parts = tuple(frozenset(int(v) for v in part) for part in doc.get("partition", []))
        return TaskBasedSolution(p.m, NeighborhoodPartition(parts), betas, decoding)
    raise ParseError(f"unknown solution type {kind!r}")
