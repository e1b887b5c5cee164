"""Trees, rooted views, subdivided edges and canonical codes.

Vertices are labelled 1..n.  All types are frozen; derived adjacency is
cached on first use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class TreeError(ValueError):
    """Raised for malformed edge lists and invalid tree arguments."""


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise TreeError(f"vertex count must be a positive integer, got {self.n!r}")
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", normalized)
        _validate(self.n, normalized)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tree":
        return cls(n, tuple(edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples; index 0 is unused."""
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def to_record(self) -> str:
        """One-line edge-list record, parseable by :func:`parse_tree`."""
        return " ".join([str(self.n)] + [f"{u} {v}" for u, v in self.edges])

    def relabel(self, perm: Sequence[int]) -> "Tree":
        """Apply ``v -> perm[v-1]``; perm must be a permutation of 1..n."""
        return Tree(self.n, tuple((perm[u - 1], perm[v - 1]) for u, v in self.edges))


def _validate(n: int, edges: Sequence[tuple[int, int]]) -> None:
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    seen = set()
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise TreeError(f"label out of range in edge ({u}, {v}); expected 1..{n}")
        if u == v:
            raise TreeError(f"self-loop at vertex {u}")
        if (u, v) in seen:
            raise TreeError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        ru, rv = find(u), find(v)
        if ru == rv:
            raise TreeError(f"cycle detected at edge ({u}, {v})")
        parent[ru] = rv
    if len(edges) != n - 1:
        raise TreeError(f"disconnected: {len(edges)} edges for {n} vertices")


_COMMENT = re.compile(r"#.*")


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: ``n`` followed by ``u v`` pairs.

    ``#`` starts a comment.  Tokens are read in order, so a one-line
    record ``"3 1 2 2 3"`` parses the same as the multi-line form.
    """
    tokens = []
    for line in text.splitlines():
        tokens.extend(_COMMENT.sub("", line).split())
    if not tokens:
        raise TreeError("empty input: expected a vertex count")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise TreeError(f"parse failure: {exc}") from None
    n, rest = nums[0], nums[1:]
    if n < 1:
        raise TreeError(f"vertex count must be positive, got {n}")
    if len(rest) % 2:
        raise TreeError("parse failure: dangling vertex label without a partner")
    edges = tuple(zip(rest[0::2], rest[1::2]))
    return Tree(n, edges)


def parse_records(text: str) -> list[Tree]:
    """Parse newline-delimited one-line records (blank and ``#`` lines skipped)."""
    out = []
    for line in text.splitlines():
        body = _COMMENT.sub("", line).strip()
        if body:
            out.append(parse_tree(body))
    return out


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(1, n)))


def star_tree(leaves: int) -> Tree:
    """K_{1,leaves} with centre 1."""
    return Tree(leaves + 1, tuple((1, i) for i in range(2, leaves + 2)))


@dataclass(frozen=True)
class RootedTree:
    base: Tree
    root: int
    parent: tuple[int | None, ...] = field(repr=False)
    children: tuple[tuple[int, ...], ...] = field(repr=False)
    postorder: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.base.n

    def subtree(self, i: int) -> list[int]:
        """Vertices of T(i): i and all its descendants, in preorder."""
        out = []
        stack = [i]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return out


def root_at(t: Tree, r: int) -> RootedTree:
    if not 1 <= r <= t.n:
        raise TreeError(f"root {r} out of range 1..{t.n}")
    parent: list[int | None] = [None] * (t.n + 1)
    children: list[tuple[int, ...]] = [()] * (t.n + 1)
    post: list[int] = []
    # iterative DFS; children visited in ascending label order
    stack: list[tuple[int, int]] = [(r, 0)]
    while stack:
        v, idx = stack[-1]
        if idx == 0:
            children[v] = tuple(u for u in t.adjacency[v] if u != parent[v])
        if idx < len(children[v]):
            stack[-1] = (v, idx + 1)
            c = children[v][idx]
            parent[c] = v
            stack.append((c, 0))
        else:
            stack.pop()
            post.append(v)
    return RootedTree(t, r, tuple(parent), tuple(children), tuple(post))


@dataclass(frozen=True)
class SubdividedEdge:
    endpoints: tuple[int, int]
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def reversed(self) -> "SubdividedEdge":
        return SubdividedEdge((self.endpoints[1], self.endpoints[0]), self.vertices[::-1])

    def to_json(self) -> dict:
        return {"endpoints": list(self.endpoints), "vertices": list(self.vertices), "length": self.length}

    @classmethod
    def from_json(cls, data: dict) -> "SubdividedEdge":
        return cls(tuple(data["endpoints"]), tuple(data["vertices"]))


def find_subdivided_edges(t: Tree) -> list[SubdividedEdge]:
    """All maximal subdivided edges, longest first."""
    if t.n < 2:
        return []
    out = []
    for a in t.vertices():
        if t.degree(a) == 2:
            continue
        for nxt in t.neighbors(a):
            chain = [a]
            prev, cur = a, nxt
            while t.degree(cur) == 2:
                chain.append(cur)
                u, w = t.neighbors(cur)
                prev, cur = cur, (w if u == prev else u)
            chain.append(cur)
            # each chain is met from both ends; keep the orientation a < b
            if a < cur:
                out.append(SubdividedEdge((a, cur), tuple(chain)))
    out.sort(key=lambda e: (-e.length, e.endpoints[0], e.vertices))
    return out


def is_subdivided_edge(t: Tree, edge: SubdividedEdge) -> bool:
    vs = edge.vertices
    if len(vs) < 2 or (vs[0], vs[-1]) != tuple(edge.endpoints):
        return False
    if any(not 1 <= v <= t.n for v in vs) or len(set(vs)) != len(vs):
        return False
    if any(vs[i + 1] not in t.neighbors(vs[i]) for i in range(len(vs) - 1)):
        return False
    return all(t.degree(v) == 2 for v in vs[1:-1])


def longest_subdivided_edge_length(t: Tree) -> int:
    if t.n == 1:
        return 1
    return max(e.length for e in find_subdivided_edges(t))


def longest_degree2_run(t: Tree) -> int:
    """Longest run of consecutive degree-2 vertices (0 if none)."""
    if t.n == 1:
        return 0
    return longest_subdivided_edge_length(t) - 2


def build_figure_tree(left: RootedTree, path_inner: int, right: RootedTree) -> Tree:
    """Join the roots of two rooted trees by a path with ``path_inner`` inner vertices.

    Labels: left tree first (its root becomes 1), then the inner path
    vertices in order, then the right tree (its root right after the path).
    The joining path therefore reads 1, nl+1, ..., nl+path_inner, nl+path_inner+1.
    """
    if path_inner < 0:
        raise TreeError("path_inner must be non-negative")
    edges: list[tuple[int, int]] = []

    def place(rt: RootedTree, offset: int) -> int:
        order = rt.subtree(rt.root)
        label = {v: offset + k + 1 for k, v in enumerate(order)}
        for v in order:
            p = rt.parent[v]
            if p is not None:
                edges.append((label[p], label[v]))
        return label[rt.root]

    a = place(left, 0)
    nl = left.n
    path = [a] + [nl + k + 1 for k in range(path_inner)]
    b = place(right, nl + path_inner)
    path.append(b)
    edges.extend(zip(path, path[1:]))
    return Tree(nl + path_inner + right.n, tuple(edges))


def centroids(t: Tree) -> list[int]:
    """One or two vertices minimising the largest component left after removal."""
    rt = root_at(t, 1)
    size = [0] * (t.n + 1)
    for v in rt.postorder:
        size[v] = 1 + sum(size[c] for c in rt.children[v])
    best: list[int] = []
    best_val = t.n + 1
    for v in t.vertices():
        worst = t.n - size[v]
        for c in rt.children[v]:
            worst = max(worst, size[c])
        if worst < best_val:
            best, best_val = [v], worst
        elif worst == best_val:
            best.append(v)
    return best


def rooted_code(rt: RootedTree) -> bytes:
    """AHU encoding of a rooted tree: '(' + sorted child codes + ')'."""
    code: dict[int, bytes] = {}
    for v in rt.postorder:
        code[v] = b"(" + b"".join(sorted(code.pop(c) for c in rt.children[v])) + b")"
    return code[rt.root]


def canonical_code(t: Tree) -> bytes:
    """Isomorphism-invariant code: AHU at the centroid, min over bicentroids."""
    return min(rooted_code(root_at(t, c)) for c in centroids(t))


def canonical_hex(t: Tree) -> str:
    return canonical_code(t).hex()
