"""Size cutoffs for the exact searches, surfaced by the CLI's ``--limit-*`` flags."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    minrank_bits: int = 30          # log2 of the fitting space for exact minrank
    chi_vertices: int = 20          # exact chromatic number
    omega_vertices: int = 24        # exact clique number
    task_pairs: int = 8             # exact (T) oracle, |P|
    task_assignments: int = 10**6   # exact (T) oracle, product of eligible-sender counts
    dec_bits: int = 12              # exact (D) oracle, sum of has-counts
    dec_length: int = 6             # exact (D) oracle, longest candidate length
    exact_cover_sets: int = 20      # exact min-cover toggle


DEFAULT_LIMITS = Limits()
