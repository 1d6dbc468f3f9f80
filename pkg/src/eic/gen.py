"""Seeded random instances.

Randomness comes from xoshiro256** seeded through splitmix64, both fully
specified below, so a (config, seed) pair produces the same instance in any
language.  Uniform doubles take the top 53 bits of each output; a
Bernoulli(p) draw is ``uniform < p``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GenerationError
from .problem import EicProblem, from_side_info_digraph, validate

MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** (Blackman and Vigna)."""

    def __init__(self, seed: int) -> None:
        sm = seed & MASK64
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self.s = s

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bernoulli(self, p: float) -> bool:
        return self.uniform() < p


def trial_seed(seed: int, trial: int) -> int:
    """Independent stream per trial, decoupled from scheduling order."""
    return (seed ^ trial) & MASK64


@dataclass(frozen=True)
class GenConfig:
    n: int
    p: float
    seed: int
    max_resamples: int = 10_000

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability must lie in [0, 1], got {self.p}")
        if self.n < 2:
            raise ValueError(f"need at least 2 nodes, got {self.n}")
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be positive")


def sample_digraph(n: int, p: float, rng: Xoshiro256) -> list[tuple[int, int]]:
    """Each ordered pair (i, j), i != j, row-major, present with probability p."""
    return [(i, j) for i in range(n) for j in range(n) if i != j and rng.bernoulli(p)]


def gen_erdos_renyi_single_unicast(c: GenConfig) -> EicProblem:
    rng = Xoshiro256(c.seed)
    for _ in range(c.max_resamples):
        edges = sample_digraph(c.n, c.p, rng)
        outdeg, indeg = [0] * c.n, [0] * c.n
        for i, j in edges:
            outdeg[i] += 1
            indeg[j] += 1
        # out-degree: every node holds something; in-degree: every block is held
        if min(outdeg) >= 1 and min(indeg) >= 1:
            return from_side_info_digraph(c.n, edges)
    raise GenerationError(
        f"no digraph with minimum in- and out-degree 1 after {c.max_resamples} samples "
        f"(n={c.n}, p={c.p}); use a larger p or n"
    )


def gen_general(n: int, m: int, p_has: float, p_need: float, seed: int, max_resamples: int = 10_000) -> EicProblem:
    """Independent needs (prob p_need), then has on the remaining cells (prob p_has).

    Resampled until valid, solvable and every node requests at least one block.
    """
    for prob in (p_has, p_need):
        if not 0.0 <= prob <= 1.0:
            raise ValueError(f"probabilities must lie in [0, 1], got {prob}")
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    rng = Xoshiro256(seed)
    for _ in range(max_resamples):
        needs = [0] * n
        has = [0] * n
        for u in range(n):
            for a in range(m):
                if rng.bernoulli(p_need):
                    needs[u] |= 1 << a
        for u in range(n):
            for a in range(m):
                if not (needs[u] >> a) & 1 and rng.bernoulli(p_has):
                    has[u] |= 1 << a
        if not all(needs):
            continue
        p = EicProblem.from_rows(has, needs, m)
        if not validate(p):
            return p
    raise GenerationError(f"no valid instance after {max_resamples} samples (n={n}, m={m}, p_has={p_has}, p_need={p_need})")
