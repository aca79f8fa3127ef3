"""Integer-indexed tables for S_n (index == lexicographic rank id)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .permgroup import MAX_RANK, Permutation, all_perms
from .errors import BudgetExceeded


@dataclass(frozen=True, eq=False)
class GroupTables:
    n: int
    perms: list[Permutation]
    index: dict[tuple[int, ...], int]
    length: np.ndarray          # (N,)
    rmul: np.ndarray            # (n-1, N): index of x * s_i
    lmul: np.ndarray            # (n-1, N): index of s_i * x
    inverse: np.ndarray         # (N,)
    by_length: np.ndarray       # indices sorted by length, ties by index

    @property
    def size(self) -> int:
        return len(self.perms)

    def idx(self, w: Permutation) -> int:
        return self.index[w.images]

    def right_descent_mask(self, i: int) -> np.ndarray:
        """Boolean mask of x with x s_i < x (i is 1-based)."""
        return self.length[self.rmul[i - 1]] < self.length

    def left_descent_mask(self, i: int) -> np.ndarray:
        return self.length[self.lmul[i - 1]] < self.length

    def longest_index(self) -> int:
        return self.size - 1


@lru_cache(maxsize=None)
def group_tables(n: int) -> GroupTables:
    if n > 8:
        # the dense tables below are sized N x n; fine to 8, pointless beyond
        raise BudgetExceeded(f"indexed tables are limited to n <= 8 (asked for {n}, max rank {MAX_RANK})")
    perms = all_perms(n)
    index = {p.images: i for i, p in enumerate(perms)}
    N = len(perms)
    length = np.array([p.length() for p in perms], dtype=np.int64)
    rmul = np.zeros((max(n - 1, 0), N), dtype=np.int64)
    lmul = np.zeros((max(n - 1, 0), N), dtype=np.int64)
    for k, p in enumerate(perms):
        for i in range(1, n):
            rmul[i - 1, k] = index[p.times_simple(i).images]
            lmul[i - 1, k] = index[p.simple_times(i).images]
    inverse = np.array([index[p.inverse().images] for p in perms], dtype=np.int64)
    by_length = np.lexsort((np.arange(N), length))
    for arr in (length, rmul, lmul, inverse, by_length):
        arr.setflags(write=False)
    return GroupTables(n, perms, index, length, rmul, lmul, inverse, by_length)
