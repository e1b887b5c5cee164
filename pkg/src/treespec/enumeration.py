"""Non-isomorphic free trees from canonical level sequences.

Rooted trees on n vertices are walked in decreasing lexicographic order of
their canonical level sequences (Beyer-Hedetniemi successor).  A rooted
tree is kept only when its root is a centroid; for bicentroidal trees the
rooting with the larger sequence wins.  Each free tree is therefore
emitted exactly once, in decreasing lexicographic order of its kept
sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .tree import Tree, longest_subdivided_edge_length

MAX_N = 20


def _blocks(seq: list[int], start: int, level: int) -> list[list[int]]:
    """Split seq[start:] into consecutive blocks each opening at ``level``."""
    out: list[list[int]] = []
    for x in seq[start:]:
        if x == level:
            out.append([x])
        else:
            out[-1].append(x)
    return out


def _keep(seq: list[int]) -> bool:
    n = len(seq)
    branches = _blocks(seq, 1, 1)
    biggest = max((len(b) for b in branches), default=0)
    if 2 * biggest < n:
        return True
    if 2 * biggest > n:
        return False
    # bicentroidal: compare against the rooting at the other centroid
    idx = next(i for i, b in enumerate(branches) if len(b) == biggest)
    other_root = branches[idx]
    rest = [0] + [x for i, b in enumerate(branches) if i != idx for x in b]
    children = _blocks([x - 1 for x in other_root], 1, 1)
    children.append([x + 1 for x in rest])
    children.sort(reverse=True)
    other = [0] + [x for b in children for x in b]
    return seq >= other


def rooted_level_sequences(n: int) -> Iterator[list[int]]:
    """Canonical level sequences of all rooted trees on n vertices (root level 0)."""
    seq = list(range(n))
    while True:
        yield list(seq)
        p = n - 1
        while p > 0 and seq[p] <= 1:
            p -= 1
        if p == 0:
            return
        q = p - 1
        while seq[q] != seq[p] - 1:
            q -= 1
        gap = p - q
        for i in range(p, n):
            seq[i] = seq[i - gap]


def free_level_sequences(n: int) -> Iterator[list[int]]:
    for seq in rooted_level_sequences(n):
        if _keep(seq):
            yield seq


def tree_from_levels(seq: list[int]) -> Tree:
    """Vertex i+1 is the i-th entry; its parent is the last vertex one level up."""
    edges = []
    last_at: list[int] = []
    for i, lev in enumerate(seq):
        del last_at[lev:]
        if lev:
            edges.append((last_at[lev - 1], i + 1))
        last_at.append(i + 1)
    return Tree(len(seq), tuple(edges))


@dataclass
class TreeStream:
    """Single-consumer stream of free trees on ``n`` vertices.

    ``min_subdivided`` keeps only trees whose longest subdivided edge has at
    least that many vertices.  ``start`` skips that many (filtered) trees,
    which is how checkpoints resume.  ``shard``/``shards`` select the
    interleaved slice i % shards == shard of the filtered order.
    """

    n: int
    min_subdivided: int | None = None
    start: int = 0
    shard: int = 0
    shards: int = 1
    max_n: int = MAX_N

    def __post_init__(self) -> None:
        if not 1 <= self.n <= self.max_n:
            raise ValueError(f"n must lie in 1..{self.max_n}, got {self.n}")
        if self.min_subdivided is not None and self.min_subdivided < 2:
            raise ValueError("minimum subdivided-edge length must be at least 2")
        if self.shards < 1 or not 0 <= self.shard < self.shards:
            raise ValueError(f"bad shard {self.shard}/{self.shards}")
        self.cursor = self.start

    def indexed(self) -> Iterator[tuple[int, Tree]]:
        """Yield (index in the filtered order, tree); updates ``cursor``."""
        k = self.min_subdivided
        if k is not None and k > self.n:
            return
        idx = 0
        for seq in free_level_sequences(self.n):
            t = tree_from_levels(seq)
            if k is not None and longest_subdivided_edge_length(t) < k:
                continue
            i = idx
            idx += 1
            if i < self.start or i % self.shards != self.shard:
                continue
            yield i, t
            self.cursor = i + 1

    def __iter__(self) -> Iterator[Tree]:
        for _, t in self.indexed():
            yield t


def enumerate_free_trees(n: int, max_n: int = MAX_N) -> TreeStream:
    return TreeStream(n, max_n=max_n)


def enumerate_with_subdivided_edge(n: int, k: int, max_n: int = MAX_N) -> TreeStream:
    return TreeStream(n, min_subdivided=k, max_n=max_n)
