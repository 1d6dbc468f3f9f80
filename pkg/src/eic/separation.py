"""Exhaustive search for single-unicast instances separating (C), (D) and (T).

Digraphs are visited by edge count, then by lexicographic edge combination,
and deduplicated up to isomorphism.  Cheap filters run first: (T) equals the
vertex count exactly when every sender's neighbourhood induces an acyclic
subgraph, since a digraph has minrank equal to its order iff it is acyclic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import SizeError
from .limits import Limits
from .minrank import restricted_minrank
from .problem import EicProblem, from_side_info_digraph, serialize
from .solve import exact_decentralized_optimal, exact_task_based_optimal

SEARCH_LIMITS = Limits(dec_bits=20, dec_length=8, task_assignments=10**7)


@dataclass(frozen=True)
class Separation:
    edges: tuple[tuple[int, int], ...]
    c: int
    d: int
    t: int

    def problem(self, n: int) -> EicProblem:
        return from_side_info_digraph(n, self.edges)


@dataclass
class SearchReport:
    n: int
    target: tuple[int, int, int]
    found: Separation | None = None
    best: Separation | None = None
    examined: int = 0
    classes: int = 0
    skipped: list[str] = field(default_factory=list)

    @property
    def exact_match(self) -> bool:
        return self.found is not None

    def to_text(self) -> str:
        hit = self.found or self.best
        lines = [
            f"examined {self.examined} digraphs, {self.classes} isomorphism classes passed the filters",
            f"target (C, D, T) = {self.target}",
        ]
        if hit is None:
            lines.append("no strict separation C < D < T found")
        else:
            tag = "exact match" if self.found else "best strict separation (NOT the target)"
            lines.append(f"{tag}: (C, D, T) = ({hit.c}, {hit.d}, {hit.t}) edges={list(hit.edges)}")
        lines += [f"skipped: {s}" for s in self.skipped]
        return "\n".join(lines)


def _acyclic(verts: list[int], out: list[int]) -> bool:
    """Kahn's algorithm on the subgraph induced by ``verts``."""
    indeg = {v: 0 for v in verts}
    for v in verts:
        for w in verts:
            if (out[v] >> w) & 1:
                indeg[w] += 1
    queue = [v for v in verts if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in verts:
            if (out[v] >> w) & 1:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
    return seen == len(verts)


def task_equals_order(n: int, out: list[int]) -> bool:
    """(T) = n for the single-unicast instance of this digraph."""
    return all(_acyclic([j for j in range(n) if (out[i] >> j) & 1], out) for i in range(n))


def _canonical(n: int, out: list[int], perms: list[tuple[int, ...]]) -> tuple[int, ...]:
    best = None
    for perm in perms:
        relabeled = [0] * n
        for v in range(n):
            row = 0
            for w in range(n):
                if (out[v] >> w) & 1:
                    row |= 1 << perm[w]
            relabeled[perm[v]] = row
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best


def find_separation(
    n: int = 5,
    target: tuple[int, int, int] = (3, 4, 5),
    limits: Limits = SEARCH_LIMITS,
) -> SearchReport:
    """First digraph, in search order, whose instance has (C, D, T) = ``target``.

    When none exists the report keeps the strict separation C < D < T with
    the widest T - C gap seen (earliest wins ties).
    """
    c_want, d_want, t_want = target
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    perms = list(itertools.permutations(range(n)))
    seen: set[tuple[int, ...]] = set()
    report = SearchReport(n, target)
    check_task = t_want == n
    for k in range(n, len(pairs) + 1):
        for combo in itertools.combinations(range(len(pairs)), k):
            report.examined += 1
            out = [0] * n
            held = 0
            for idx in combo:
                i, j = pairs[idx]
                out[i] |= 1 << j
                held |= 1 << j
            if not all(out) or held != (1 << n) - 1:
                continue
            if check_task and not task_equals_order(n, out):
                continue
            key = _canonical(n, out, perms)
            if key in seen:
                continue
            seen.add(key)
            report.classes += 1
            edges = tuple(pairs[idx] for idx in combo)
            p = from_side_info_digraph(n, edges)
            c = restricted_minrank(p, limits=limits).rank
            if c + 2 > t_want:
                continue  # no room for C < D < T
            try:
                d = exact_decentralized_optimal(p, limits)
                t = n if check_task else exact_task_based_optimal(p, limits)[0]
            except SizeError as exc:
                report.skipped.append(f"{list(edges)}: {exc}")
                continue
            if (c, d, t) == target:
                report.found = Separation(edges, c, d, t)
                return report
            if c < d < t:
                cur = report.best
                if cur is None or (t - c) > (cur.t - cur.c):
                    report.best = Separation(edges, c, d, t)
    return report


def fixture_json(sep: Separation, n: int) -> str:
    doc = json.loads(serialize(sep.problem(n)))
    doc["edges"] = [list(e) for e in sep.edges]
    doc["lengths"] = {"centralized": sep.c, "decentralized": sep.d, "task_based": sep.t}
    # one field per line keeps the fixture diffable
    body = ",\n".join(f" {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in doc.items())
    return "{\n" + body + "\n}\n"
