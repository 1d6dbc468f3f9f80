"""EIC problem model: who has and who needs which blocks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ParseError, ValidationError
from .gf2 import BitMatrix, bits, popcount


class RequirementPair(NamedTuple):
    node: int
    block: int

    def label(self) -> str:
        return f"{self.node}:{self.block}"


class Violation(NamedTuple):
    kind: str  # "overlap" | "unsolvable" | "out-degree"
    location: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class EicProblem:
    """An embedded index coding instance.

    ``has[u]`` and ``needs[u]`` are rows of the n x m matrices B and R.
    Construction only checks shapes; use :func:`validate` for the model
    invariants.
    """

    n: int
    m: int
    has: BitMatrix
    needs: BitMatrix

    def __post_init__(self) -> None:
        for name, mat in (("has", self.has), ("needs", self.needs)):
            if mat.shape != (self.n, self.m):
                raise ValueError(f"{name} has shape {mat.shape}, expected {(self.n, self.m)}")

    @classmethod
    def from_rows(cls, has: Iterable[int], needs: Iterable[int], m: int) -> "EicProblem":
        has_t, needs_t = tuple(has), tuple(needs)
        if len(has_t) != len(needs_t):
            raise ValueError("has and needs must have one row per node")
        return cls(len(has_t), m, BitMatrix(has_t, m), BitMatrix(needs_t, m))

    @classmethod
    def from_strings(cls, has: list[str], needs: list[str]) -> "EicProblem":
        m = len(has[0]) if has else 0
        return cls(len(has), m, BitMatrix.from_strings(has, m), BitMatrix.from_strings(needs, m))

    @property
    def has_rows(self) -> tuple[int, ...]:
        return self.has.rows

    @property
    def needs_rows(self) -> tuple[int, ...]:
        return self.needs.rows

    def holders(self, block: int) -> list[int]:
        """Nodes that have ``block``, ascending."""
        return [u for u in range(self.n) if (self.has.rows[u] >> block) & 1]

    def requested_mask(self) -> int:
        acc = 0
        for r in self.needs.rows:
            acc |= r
        return acc

    def has_counts(self) -> list[int]:
        return [popcount(r) for r in self.has.rows]

    def restrict_needs(self, pairs: Iterable[RequirementPair]) -> "EicProblem":
        """Same side information, only the given requests."""
        needs = [0] * self.n
        for u, a in pairs:
            if not (self.needs.rows[u] >> a) & 1:
                raise ValueError(f"({u},{a}) is not a requirement pair")
            needs[u] |= 1 << a
        return EicProblem(self.n, self.m, self.has, BitMatrix(tuple(needs), self.m))


def validate(p: EicProblem) -> list[Violation]:
    """Report every violated invariant; an empty list means well-formed and solvable."""
    out: list[Violation] = []
    for u in range(p.n):
        for a in bits(p.has.rows[u] & p.needs.rows[u]):
            out.append(Violation("overlap", (u, a), f"node {u} both has and needs block {a}"))
    flagged: set[int] = set()
    for u in range(p.n):
        for a in bits(p.needs.rows[u]):
            if a in flagged:
                continue
            if not any((p.has.rows[w] >> a) & 1 for w in range(p.n) if w != u):
                flagged.add(a)
                out.append(Violation("unsolvable", (a,), f"block {a} is needed but held by no other node"))
    return out


def check_valid(p: EicProblem) -> EicProblem:
    report = validate(p)
    if report:
        raise ValidationError("; ".join(v.detail for v in report), report)
    return p


def check_disjoint(p: EicProblem) -> None:
    """The weaker invariant the centralized machinery needs (no solvability)."""
    bad = [v for v in validate(p) if v.kind == "overlap"]
    if bad:
        raise ValidationError("; ".join(v.detail for v in bad), bad)


def requirement_pairs(p: EicProblem) -> list[RequirementPair]:
    """All (u, a) with needs[u, a] = 1, sorted by (node, block).

    This ordering is the canonical vertex order everywhere downstream.
    """
    return [RequirementPair(u, a) for u in range(p.n) for a in bits(p.needs.rows[u])]


def is_single_unicast(p: EicProblem) -> bool:
    requested = 0
    for r in p.needs.rows:
        if popcount(r) != 1 or r & requested:
            return False
        requested |= r
    return True


def from_side_info_digraph(k: int, edges: Iterable[tuple[int, int]]) -> EicProblem:
    """Single-unicast instance from a side-information digraph.

    Node ``i`` needs block ``i``; edge ``(i, j)`` means node ``i`` has block ``j``.
    """
    has = [0] * k
    for i, j in edges:
        if not (0 <= i < k and 0 <= j < k):
            raise ValueError(f"edge {(i, j)} out of range for {k} vertices")
        if i != j:
            has[i] |= 1 << j
    empty = [i for i, row in enumerate(has) if not row]
    if empty:
        raise ValidationError(
            f"vertices {empty} have out-degree 0",
            [Violation("out-degree", (i,), f"node {i} holds no block") for i in empty],
        )
    held = 0
    for row in has:
        held |= row
    orphans = [j for j in range(k) if not (held >> j) & 1]
    if orphans:
        raise ValidationError(
            f"vertices {orphans} have in-degree 0; their requests cannot be served",
            [Violation("unsolvable", (j,), f"block {j} is needed but held by no other node") for j in orphans],
        )
    return EicProblem.from_rows(has, [1 << i for i in range(k)], k)


def serialize(p: EicProblem) -> str:
    doc = {"n": p.n, "m": p.m, "has": p.has.to_strings(), "needs": p.needs.to_strings()}
    return json.dumps(doc, separators=(",", ":"))


def _matrix_field(doc: dict, key: str, n: int, m: int) -> BitMatrix:
    rows = doc.get(key)
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"field {key!r}: expected an array of {n} bit-strings")
    for u, s in enumerate(rows):
        if not isinstance(s, str) or len(s) != m or set(s) - {"0", "1"}:
            raise ParseError(f"field {key!r}, row {u}: expected a string of {m} characters over '0'/'1', got {s!r}")
    return BitMatrix.from_strings(rows, m)


def parse(text: str, *, validate_problem: bool = True) -> EicProblem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    for key in ("n", "m"):
        if not isinstance(doc.get(key), int) or isinstance(doc.get(key), bool) or doc[key] < 0:
            raise ParseError(f"field {key!r}: expected a non-negative integer")
    n, m = doc["n"], doc["m"]
    p = EicProblem(n, m, _matrix_field(doc, "has", n, m), _matrix_field(doc, "needs", n, m))
    if validate_problem:
        check_valid(p)
    return p
