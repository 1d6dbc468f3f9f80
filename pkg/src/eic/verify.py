"""Solver-independent checking and payload simulation.

Decodability is always recomputed from the stacked matrix; a provided
decoding plan is checked separately and never trusted for the verdict.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import SimulationError
from .gf2 import BitMatrix, bits, express_in_rowspan
from .graph import build_problem_graph, sender_neighborhood
from .problem import EicProblem, RequirementPair, requirement_pairs
from .solve import CentralizedSolution, LinearBroadcastSolution, Solution, TaskBasedSolution

KINDS = (
    "SenderSupport",
    "Undecodable",
    "PartitionNotDisjoint",
    "PartitionNotSubset",
    "PartitionIncomplete",
    "CrossSenderDecode",
)


@dataclass(frozen=True)
class Violation:
    kind: str
    location: tuple[int, ...]
    detail: str


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)
    measured_length: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, location: tuple[int, ...], detail: str) -> None:
        assert kind in KINDS, kind
        self.violations.append(Violation(kind, location, detail))

    def to_json(self) -> str:
        doc = {
            "ok": self.ok,
            "measured_length": self.measured_length,
            "violations": [{"kind": v.kind, "location": list(v.location), "detail": v.detail} for v in self.violations],
        }
        return json.dumps(doc, indent=1)

    def to_text(self) -> str:
        head = f"{'OK' if self.ok else 'FAILED'} length={self.measured_length}"
        return "\n".join([head] + [f"  {v.kind} at {v.location}: {v.detail}" for v in self.violations])


def _stack(messages: list[int], has_row: int, m: int) -> BitMatrix:
    diag = [(1 << b) if (has_row >> b) & 1 else 0 for b in range(m)]
    return BitMatrix(tuple(messages) + tuple(diag), m)


def _check_shapes(p: EicProblem, s: Solution) -> None:
    if s.m != p.m:
        raise ValueError(f"solution has {s.m} columns, problem has {p.m}")
    if isinstance(s, (LinearBroadcastSolution, TaskBasedSolution)) and len(s.betas) != p.n:
        raise ValueError(f"solution has {len(s.betas)} senders, problem has {p.n} nodes")


def _check_plan(report: VerificationReport, stack: BitMatrix, pair: RequirementPair, alpha: int | None) -> None:
    if alpha is None:
        return
    if alpha >> stack.nrows or stack.left_multiply(alpha) != 1 << pair.block:
        report.add("Undecodable", tuple(pair), "provided decoding vector does not reproduce e_a")


def verify_solution(p: EicProblem, s: Solution) -> VerificationReport:
    """Check sender support and decodability against the full broadcast."""
    if isinstance(s, TaskBasedSolution):
        s = s.as_broadcast()
    _check_shapes(p, s)
    report = VerificationReport(measured_length=s.length)
    if isinstance(s, CentralizedSolution):
        messages = list(s.beta)
    else:
        messages = s.stacked()
        for u, rows in enumerate(s.betas):
            for k, row in enumerate(rows):
                extra = row & ~p.has.rows[u]
                if extra:
                    report.add("SenderSupport", (u,), f"row {k} of node {u} uses blocks {list(bits(extra))} it lacks")
    for pair in requirement_pairs(p):
        stack = _stack(messages, p.has.rows[pair.node], p.m)
        if express_in_rowspan(stack, 1 << pair.block) is None:
            report.add("Undecodable", tuple(pair), f"e_{pair.block} is not in the span available to node {pair.node}")
        else:
            _check_plan(report, stack, pair, s.decoding.get(pair))
    return report


def verify_task_based(p: EicProblem, s: TaskBasedSolution) -> VerificationReport:
    """Check the partition and that each pair decodes from its responsible sender alone."""
    _check_shapes(p, s)
    report = VerificationReport(measured_length=s.length)
    g = build_problem_graph(p)
    verts = g.vertices
    parts = s.partition.parts
    if len(parts) != p.n:
        raise ValueError(f"partition has {len(parts)} parts, problem has {p.n} nodes")
    for u, rows in enumerate(s.betas):
        for k, row in enumerate(rows):
            extra = row & ~p.has.rows[u]
            if extra:
                report.add("SenderSupport", (u,), f"row {k} of node {u} uses blocks {list(bits(extra))} it lacks")
    owner: dict[int, int] = {}
    for i, part in enumerate(parts):
        hood = sender_neighborhood(g, p, i)
        for v in sorted(part):
            if not 0 <= v < len(verts):
                report.add("PartitionNotSubset", (i,), f"vertex index {v} out of range")
                continue
            if not (hood >> v) & 1:
                report.add("PartitionNotSubset", (i, *verts[v]), f"node {i} lacks block {verts[v].block} requested at {tuple(verts[v])}")
            if v in owner:
                report.add("PartitionNotDisjoint", (i, *verts[v]), f"vertex {tuple(verts[v])} assigned to senders {owner[v]} and {i}")
            else:
                owner[v] = i
    everything = [r for b in s.betas for r in b]
    for v, pair in enumerate(verts):
        if v not in owner:
            report.add("PartitionIncomplete", tuple(pair), f"vertex {tuple(pair)} has no responsible sender")
            continue
        i = owner[v]
        stack = _stack(list(s.betas[i]), p.has.rows[pair.node], p.m)
        if express_in_rowspan(stack, 1 << pair.block) is None:
            full = _stack(everything, p.has.rows[pair.node], p.m)
            if express_in_rowspan(full, 1 << pair.block) is not None:
                report.add("CrossSenderDecode", tuple(pair), f"decodes only by combining senders, not from sender {i} alone")
            else:
                report.add("Undecodable", tuple(pair), f"e_{pair.block} is not recoverable by node {pair.node}")
        else:
            _check_plan(report, stack, pair, s.decoding.get(pair))
    return report


def verify(p: EicProblem, s: Solution) -> VerificationReport:
    if isinstance(s, TaskBasedSolution):
        return verify_task_based(p, s)
    return verify_solution(p, s)


@dataclass(frozen=True)
class DataBlocks:
    length: int
    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("block length must be at least 1")
        for i, b in enumerate(self.blocks):
            if b < 0 or b >> self.length:
                raise ValueError(f"block {i} does not fit in {self.length} bits")

    @classmethod
    def random(cls, m: int, length: int, seed: int) -> "DataBlocks":
        rng = random.Random(seed)
        return cls(length, tuple(rng.getrandbits(length) for _ in range(m)))


def _combine(rows_mask: int, blocks: tuple[int, ...]) -> int:
    acc = 0
    for b in bits(rows_mask):
        acc ^= blocks[b]
    return acc


def simulate(p: EicProblem, s: Solution, d: DataBlocks) -> dict[RequirementPair, int]:
    """Broadcast ``beta_u . D`` for every sender and run each receiver's decoding."""
    if len(d.blocks) != p.m:
        raise ValueError(f"expected {p.m} data blocks, got {len(d.blocks)}")
    report = verify(p, s)
    if not report.ok:
        raise SimulationError("solution does not verify:\n" + report.to_text())
    verts = requirement_pairs(p)
    if isinstance(s, CentralizedSolution):
        sent = [_combine(r, d.blocks) for r in s.beta]
        sources = {pair: (list(s.beta), sent) for pair in verts}
    elif isinstance(s, TaskBasedSolution):
        per_sender = [[_combine(r, d.blocks) for r in b] for b in s.betas]
        resp = s.partition.responsible()
        sources = {pair: (list(s.betas[resp[v]]), per_sender[resp[v]]) for v, pair in enumerate(verts)}
    else:
        rows = s.stacked()
        sent = [_combine(r, d.blocks) for r in rows]
        sources = {pair: (rows, sent) for pair in verts}
    out = {}
    for pair in verts:
        rows, received = sources[pair]
        has_row = p.has.rows[pair.node]
        alpha = s.decoding.get(pair)
        if alpha is None:
            alpha = express_in_rowspan(_stack(rows, has_row, p.m), 1 << pair.block)
        h = len(rows)
        value = 0
        for j in bits(alpha & ((1 << h) - 1)):
            value ^= received[j]
        local = (alpha >> h) & has_row
        value ^= _combine(local, d.blocks)
        out[pair] = value
    return out
