"""Labelled trees: construction, parsing, distances, canonical forms."""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, Sequence, Tuple


class TreeError(ValueError):
    """Raised when an input does not describe a valid tree."""


class Tree:
    """A finite, simple, undirected, connected, acyclic graph.

    Vertex ids are nonnegative integers; they need not be contiguous (parsed
    files keep the ids that appear in the document).  Instances are immutable
    after construction and safe to share.
    """

    def __init__(self, edges: Iterable[Tuple[int, int]], vertices: Iterable[int] = ()):
        edge_set = set()
        vs = set(vertices)
        for u, v in edges:
            if u == v:
                raise TreeError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in edge_set:
                raise TreeError(f"duplicate edge {u} {v}")
            edge_set.add(key)
            vs.add(u)
            vs.add(v)
        if not vs:
            raise TreeError("empty tree")
        if len(edge_set) > len(vs) - 1:
            raise TreeError(
                f"cycle detected: {len(vs)} vertices but {len(edge_set)} edges"
            )
        if len(edge_set) < len(vs) - 1:
            raise TreeError(
                f"disconnected: {len(vs)} vertices but {len(edge_set)} edges"
            )
        adj: Dict[int, List[int]] = {v: [] for v in vs}
        for u, v in edge_set:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        # connectivity (together with |E| = |V| - 1 this rules out cycles)
        seen = {next(iter(vs))}
        stack = [next(iter(vs))]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(vs):
            raise TreeError("disconnected")
        self.vertices: Tuple[int, ...] = tuple(sorted(vs))
        self.edges: Tuple[Tuple[int, int], ...] = tuple(sorted(edge_set))
        self._adj = adj
        self._dist: Dict[int, Dict[int, int]] | None = None

    @property
    def order(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def leaves(self) -> Tuple[int, ...]:
        if self.order == 1:
            return self.vertices
        return tuple(v for v in self.vertices if self.degree(v) == 1)

    def branch_vertices(self) -> Tuple[int, ...]:
        return tuple(v for v in self.vertices if self.degree(v) >= 3)

    def is_path(self) -> bool:
        return all(self.degree(v) <= 2 for v in self.vertices)

    def distances_from(self, source: int) -> Dict[int, int]:
        if source not in self._adj:
            raise TreeError(f"vertex {source} not in tree")
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    @property
    def dist(self) -> Dict[int, Dict[int, int]]:
        """All-pairs distance table, computed lazily by BFS from each vertex."""
        if self._dist is None:
            self._dist = {v: self.distances_from(v) for v in self.vertices}
        return self._dist

    def eccentricity(self, v: int) -> int:
        return max(self.distances_from(v).values())

    def ball(self, v: int, radius: int) -> frozenset:
        d = self.dist[v]
        return frozenset(u for u in self.vertices if d[u] <= radius)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tree)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Tree(order={self.order}, edges={list(self.edges)})"


def all_pairs_distance(tree: Tree) -> Dict[int, Dict[int, int]]:
    """Symmetric distance table with d(v, v) = 0."""
    return tree.dist


def diameter(tree: Tree) -> int:
    """Largest pairwise distance, found by a double BFS sweep."""
    start = tree.vertices[0]
    d0 = tree.distances_from(start)
    far = max(d0, key=lambda v: (d0[v], v))
    d1 = tree.distances_from(far)
    return max(d1.values())


def make_path(n: int) -> Tree:
    if n < 1:
        raise TreeError("path needs at least one vertex")
    if n == 1:
        return Tree([], vertices=[0])
    return Tree([(i, i + 1) for i in range(n - 1)])


def make_spider(arm_lengths: Sequence[int]) -> Tree:
    """Spider with head 0 and the given arm lengths, ids assigned arm by arm."""
    if len(arm_lengths) < 3:
        raise TreeError("a spider needs at least 3 arms")
    if any(l < 1 for l in arm_lengths):
        raise TreeError("arm lengths must be positive")
    edges = []
    nxt = 1
    for length in arm_lengths:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(edges)


def make_star(n_leaves: int) -> Tree:
    return make_spider([1] * n_leaves)


def parse_tree(text: str) -> Tree:
    """Parse the line-based edge-list format.

    Recognised lines: ``# comment``, ``edge <u> <v>``, ``vertex <v>`` (for the
    single-vertex tree), and ``label <name> <v>`` (ignored here, used by the
    topology parser).
    """
    edges = []
    vertices = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "edge" and len(parts) == 3:
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise TreeError(f"malformed line {lineno}: {raw!r}") from None
            if u < 0 or v < 0:
                raise TreeError(f"malformed line {lineno}: negative id")
            edges.append((u, v))
        elif parts[0] == "vertex" and len(parts) == 2:
            try:
                vertices.append(int(parts[1]))
            except ValueError:
                raise TreeError(f"malformed line {lineno}: {raw!r}") from None
        elif parts[0] == "label" and len(parts) == 3:
            continue
        else:
            raise TreeError(f"malformed line {lineno}: {raw!r}")
    return Tree(edges, vertices=vertices)


def parse_labels(text: str) -> Dict[str, int]:
    """Collect ``label <name> <v>`` lines from a tree/topology document."""
    labels: Dict[str, int] = {}
    for raw in text.splitlines():
        parts = raw.strip().split()
        if len(parts) == 3 and parts[0] == "label":
            labels[parts[1]] = int(parts[2])
    return labels


def subdivide_edge(tree: Tree, u: int, v: int) -> Tree:
    """Insert one fresh degree-2 vertex into the edge (u, v)."""
    key = (u, v) if u < v else (v, u)
    if key not in set(tree.edges):
        raise TreeError(f"no edge {u} {v}")
    fresh = max(tree.vertices) + 1
    edges = [e for e in tree.edges if e != key]
    edges.extend([(u, fresh), (fresh, v)])
    return Tree(edges)


def _centroid(tree: Tree) -> Tuple[int, ...]:
    """The one or two centroid vertices (minimising the max subtree size)."""
    if tree.order == 1:
        return tree.vertices
    root = tree.vertices[0]
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        u = stack.pop()
        order.append(u)
        for w in tree.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                stack.append(w)
    size = {v: 1 for v in tree.vertices}
    for u in reversed(order):
        if parent[u] is not None:
            size[parent[u]] += size[u]
    n = tree.order
    best = None
    cents: List[int] = []
    for v in tree.vertices:
        heavy = max(
            [size[w] for w in tree.neighbors(v) if w != parent[v]]
            + ([n - size[v]] if parent[v] is not None else []),
            default=0,
        )
        if best is None or heavy < best:
            best = heavy
            cents = [v]
        elif heavy == best:
            cents.append(v)
    return tuple(sorted(cents))


def _rooted_encoding(tree: Tree, root: int, block: int | None = None) -> str:
    def enc(v: int, par: int | None) -> str:
        kids = sorted(
            enc(w, v) for w in tree.neighbors(v) if w != par and w != block
        )
        return "(" + "".join(kids) + ")"

    return enc(root, None)


def canonical_key(tree: Tree) -> str:
    """Canonical form rooted at the centroid; equal iff trees are isomorphic."""
    cents = _centroid(tree)
    if len(cents) == 1:
        return "C" + _rooted_encoding(tree, cents[0])
    a, b = cents
    ea = _rooted_encoding(tree, a, block=b)
    eb = _rooted_encoding(tree, b, block=a)
    return "B" + "".join(sorted([ea, eb]))


def isomorphic(t1: Tree, t2: Tree) -> bool:
    return canonical_key(t1) == canonical_key(t2)
