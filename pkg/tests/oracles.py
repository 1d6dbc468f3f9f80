"""Brute-force reference implementations.

Written against the definitions directly, using lists of 0/1 and exhaustive
enumeration, and sharing no code with the package beyond reading a
problem's has/needs matrices.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def rank_lists(rows):
    """Rank over GF(2) by plain Gaussian elimination on lists."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                mat[i] = [x ^ y for x, y in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def in_span(rows, v):
    return rank_lists(list(rows) + [list(v)]) == rank_lists(rows) if rows else not any(v)


def xor(a, b):
    return tuple(x ^ y for x, y in zip(a, b))


def span_set(vectors, m):
    out = {tuple([0] * m)}
    for v in vectors:
        out |= {xor(s, v) for s in out}
    return frozenset(out)


@lru_cache(maxsize=None)
def subspaces(m):
    """Every subspace of GF(2)^m as a frozenset of tuples."""
    zero = frozenset({tuple([0] * m)})
    seen = {zero}
    frontier = [zero]
    allv = list(itertools.product((0, 1), repeat=m))
    while frontier:
        nxt = []
        for s in frontier:
            for v in allv:
                if v not in s:
                    t = frozenset(s | {xor(x, v) for x in s})
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(seen, key=len)


def dim(space):
    return len(space).bit_length() - 1


def problem_lists(p):
    has = [[int(c) for c in s] for s in p.has.to_strings()]
    needs = [[int(c) for c in s] for s in p.needs.to_strings()]
    return has, needs


def pairs_of(needs):
    return [(u, a) for u, row in enumerate(needs) for a, x in enumerate(row) if x]


def decodes(space, has_row, a):
    """e_a in space + span{e_b : node has b}: some s agrees with e_a off the held columns."""
    m = len(has_row)
    return any(all(s[c] == (1 if c == a else 0) for c in range(m) if not has_row[c]) for s in space)


def brute_centralized_length(p):
    """Least dimension of a broadcast subspace letting every request decode."""
    has, needs = problem_lists(p)
    pairs = pairs_of(needs)
    for s in subspaces(p.m):
        if all(decodes(s, has[u], a) for u, a in pairs):
            return dim(s)
    raise AssertionError("unsolvable")


def _supported(v, row):
    return all(row[c] or not v[c] for c in range(len(v)))


def brute_decentralized_length(p):
    """Least dimension of a decoding subspace spanned by vectors some node can build."""
    has, needs = problem_lists(p)
    pairs = pairs_of(needs)
    for s in subspaces(p.m):
        if not all(decodes(s, has[u], a) for u, a in pairs):
            continue
        buildable = [v for v in s if any(_supported(v, row) for row in has)]
        if len(span_set(buildable, p.m)) == len(s):
            return dim(s)
    raise AssertionError("unsolvable")


def brute_task_length(p):
    """Minimum over assignments of requests to single senders of the summed sender costs."""
    has, needs = problem_lists(p)
    pairs = pairs_of(needs)
    spaces = subspaces(p.m)

    @lru_cache(maxsize=None)
    def cost(i, group):
        if not group:
            return 0
        for s in spaces:
            if all(_supported(v, has[i]) for v in s) and all(decodes(s, has[u], a) for u, a in group):
                return dim(s)
        return None

    eligible = [[i for i in range(p.n) if has[i][a]] for _, a in pairs]
    best = None
    for assign in itertools.product(*eligible):
        total = 0
        for i in range(p.n):
            c = cost(i, tuple(pr for pr, s in zip(pairs, assign) if s == i))
            total += c
        best = total if best is None else min(best, total)
    return best


def brute_restricted_minrank(p):
    """Min rank of phi(A) over every A in the fitting space, fit checked explicitly."""
    has, needs = problem_lists(p)
    pairs = pairs_of(needs)
    m = p.m
    options = []
    for u, a in pairs:
        free = [b for b in range(m) if has[u][b]]
        rows = []
        for bits in itertools.product((0, 1), repeat=len(free)):
            r = [0] * m
            r[a] = 1
            for b, x in zip(free, bits):
                r[b] = x
            rows.append(r)
        options.append(rows)
    best = None
    for a_rows in itertools.product(*options):
        square = [[row[b] for (_, b) in pairs] for row in a_rows]
        for i, (u, a) in enumerate(pairs):
            for j, (w, b) in enumerate(pairs):
                edge = i == j or has[u][b] or a == b
                assert edge or not square[i][j]
            assert square[i][i] == 1
        r = rank_lists(square)
        best = r if best is None else min(best, r)
    return best


def brute_digraph_minrank(n, edges):
    """Unrestricted minrank of a digraph: min rank of a fitting n x n matrix."""
    eset = set(edges)
    free = [(i, j) for i in range(n) for j in range(n) if i != j and (i, j) in eset]
    best = n
    for bits in itertools.product((0, 1), repeat=len(free)):
        mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), x in zip(free, bits):
            mat[i][j] = x
        best = min(best, rank_lists(mat))
    return best


def brute_max_clique(n, adj_pairs):
    best = 0
    for size in range(n, 0, -1):
        for sub in itertools.combinations(range(n), size):
            if all((a, b) in adj_pairs for a, b in itertools.combinations(sub, 2)):
                return size
    return best


def brute_chromatic(n, adj_pairs):
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for col in itertools.product(range(k), repeat=n):
            if all(col[a] != col[b] for a, b in adj_pairs):
                return k
    return n


def brute_maximal_cliques(n, adj_pairs):
    cliques = [
        frozenset(sub)
        for size in range(1, n + 1)
        for sub in itertools.combinations(range(n), size)
        if all((a, b) in adj_pairs for a, b in itertools.combinations(sub, 2))
    ]
    return {c for c in cliques if not any(c < d for d in cliques)}


def canonical_digraph(n, edges):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[i], perm[j]) for i, j in edges))
        if best is None or key < best:
            best = key
    return best


def small_single_unicast_digraphs(max_k):
    """One representative per isomorphism class of digraphs on 2..max_k vertices
    in which every vertex has in- and out-degree at least 1."""
    out = []
    for k in range(2, max_k + 1):
        pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
        seen = set()
        for mask in range(1 << len(pairs)):
            edges = [pairs[t] for t in range(len(pairs)) if (mask >> t) & 1]
            if {i for i, _ in edges} != set(range(k)) or {j for _, j in edges} != set(range(k)):
                continue
            key = canonical_digraph(k, edges)
            if key in seen:
                continue
            seen.add(key)
            out.append((k, list(key)))
    return out
