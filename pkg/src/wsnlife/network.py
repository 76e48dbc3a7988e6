"""Network geometry, the power-law mixture gain model and spanning trees.

Node indices are plain integers. Line networks use the convention of the
lifetime literature: the data collector (if any) is node 0 at the origin and
sensors 1..N sit at integer coordinates 1..N, so distances stay exact ints.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._numeric import to_fraction
from .errors import BoundaryNodeError, DomainError, InvalidSizeError, ResourceLimitError

MAX_ENUMERATION_NODES = 8


@dataclass(frozen=True, eq=False)
class Network:
    """Nodes at points of R^d (d = 1, 2 or 3); a subset of them are collectors."""

    positions: Mapping[int, tuple]
    collectors: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        pos = {int(k): tuple(v) if isinstance(v, (tuple, list)) else (v,)
               for k, v in dict(self.positions).items()}
        if not pos:
            raise InvalidSizeError("network has no nodes")
        dims = {len(p) for p in pos.values()}
        if len(dims) != 1 or not dims <= {1, 2, 3}:
            raise ValueError(f"all positions must share one dimension in 1..3, got {sorted(dims)}")
        if len(set(pos.values())) != len(pos):
            raise ValueError("node positions must be distinct")
        collectors = frozenset(int(c) for c in self.collectors)
        unknown = collectors - pos.keys()
        if unknown:
            raise ValueError(f"collector indices {sorted(unknown)} are not nodes")
        object.__setattr__(self, "positions", dict(sorted(pos.items())))
        object.__setattr__(self, "collectors", collectors)

    @property
    def nodes(self) -> list[int]:
        return list(self.positions)

    @property
    def sensors(self) -> list[int]:
        return [n for n in self.positions if n not in self.collectors]

    @property
    def N(self) -> int:
        return len(self.sensors)

    @property
    def dim(self) -> int:
        return len(next(iter(self.positions.values())))

    def distance(self, i: int, j: int):
        """Euclidean distance; exact (int/Fraction) for 1-D exact coordinates."""
        try:
            a, b = self.positions[i], self.positions[j]
        except KeyError as exc:
            raise DomainError(f"unknown node {exc.args[0]}") from None
        if len(a) == 1:
            return abs(a[0] - b[0])
        return math.dist(a, b)

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return self.positions == other.positions and self.collectors == other.collectors

    def __repr__(self):
        return f"Network(N={self.N}, dim={self.dim}, collectors={sorted(self.collectors)})"


def build_line_network(N: int, with_collector: bool = True) -> Network:
    """The regular line network L_N: sensors at x_i = i, collector (node 0) at 0."""
    if int(N) != N or N < 1:
        raise InvalidSizeError(f"line network needs N >= 1, got {N!r}")
    N = int(N)
    positions = {i: (i,) for i in range(1, N + 1)}
    collectors = frozenset()
    if with_collector:
        positions[0] = (0,)
        collectors = frozenset({0})
    return Network(positions, collectors)


@dataclass(frozen=True)
class GainSpec:
    """Inverse gain as a convex mixture of power laws: sum_n lambdas[n] * r**exponents[n]."""

    lambdas: tuple
    exponents: tuple

    def __post_init__(self):
        # Fraction weights select exact arithmetic; anything else is float
        lambdas = tuple(lam if isinstance(lam, Fraction) else float(lam) for lam in self.lambdas)
        # integral exponents are kept as ints so that int distances give exact powers
        exponents = tuple(int(a) if float(a).is_integer() else float(a) for a in self.exponents)
        if not lambdas or len(lambdas) != len(exponents):
            raise ValueError("lambdas and exponents must be non-empty and of equal length")
        if any(lam < 0 for lam in lambdas):
            raise ValueError("mixture weights must be nonnegative")
        if any(a < 1 for a in exponents):
            raise ValueError("path-loss exponents must be >= 1")
        if abs(sum(lambdas) - 1) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1, got {float(sum(lambdas))!r}")
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "exponents", exponents)

    @classmethod
    def power_law(cls, a, weight=1):
        return cls((weight,), (a,))

    def exact(self) -> "GainSpec":
        """Copy with Fraction weights (decimal reading of floats)."""
        return GainSpec(tuple(to_fraction(lam) for lam in self.lambdas), self.exponents)

    @property
    def single_exponent(self):
        """The exponent of a pure power law, or None for a genuine mixture."""
        active = {a for lam, a in zip(self.lambdas, self.exponents) if lam > 0}
        return active.pop() if len(active) == 1 else None


def inverse_gain(g: GainSpec, r):
    """gamma^{-1}_r = sum_n lambda_n r^{a_n}; strictly increasing, equal to 1 at r = 1."""
    if not r > 0:
        raise DomainError(f"distance must be positive, got {r!r}")
    if r == 1:
        # weights sum to one by construction; a float sum may land an ulp away
        return Fraction(1) if isinstance(g.lambdas[0], Fraction) else 1.0
    return sum(lam * r ** a for lam, a in zip(g.lambdas, g.exponents))


def pair_inverse_gain(net: Network, g: GainSpec, i: int, j: int):
    if i == j:
        raise DomainError(f"self-link ({i}, {j}) has no gain")
    return inverse_gain(g, net.distance(i, j))


@dataclass(frozen=True)
class OrientedTree:
    """Spanning tree with every edge (i, j) pointing away from ``root`` (i sends to j).

    Edges are stored sorted so that two trees compare equal iff they have the
    same root and edge set.
    """

    root: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(sorted((int(i), int(j)) for i, j in self.edges))
        object.__setattr__(self, "edges", edges)
        heads = [j for _, j in edges]
        if len(set(heads)) != len(heads):
            raise ValueError("a node receives on two edges; not a tree oriented from the root")
        if self.root in heads:
            raise ValueError("the root must not have an incoming edge")
        children: dict[int, list[int]] = {}
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            children.setdefault(i, []).append(j)
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            for c in children.get(queue.popleft(), ()):
                seen.add(c)
                queue.append(c)
        if len(seen) != len(edges) + 1:
            raise ValueError("edges are not all reachable from the root")

    @property
    def nodes(self) -> frozenset:
        return frozenset({self.root, *(j for _, j in self.edges)})

    def spans(self, nodes: Iterable[int]) -> bool:
        return self.nodes == frozenset(nodes)

    def receives(self, j: int) -> bool:
        return any(h == j for _, h in self.edges)


def _prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _orient(undirected: Iterable[tuple[int, int]], root: int) -> tuple:
    adj: dict[int, list[int]] = {}
    for u, v in undirected:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    out = []
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                out.append((u, v))
                queue.append(v)
    return tuple(out)


def enumerate_spanning_trees(net: Network, root: int, cap: int = MAX_ENUMERATION_NODES) -> list[OrientedTree]:
    """All N^(N-2) spanning trees of the complete graph on the network's nodes,
    oriented away from ``root``, in lexicographic Pruefer-sequence order."""
    labels = net.nodes
    n = len(labels)
    if root not in net.positions:
        raise DomainError(f"root {root} is not a node")
    if n < 2:
        raise InvalidSizeError("spanning-tree enumeration needs at least 2 nodes")
    if n > cap:
        raise ResourceLimitError(f"{n} nodes exceeds the enumeration cap of {cap} ({n}^{n - 2} trees)")
    trees = []
    for seq in itertools.product(range(n), repeat=n - 2):
        und = [(labels[u], labels[v]) for u, v in _prufer_decode(seq, n)]
        trees.append(OrientedTree(root, _orient(und, root)))
    return trees


def lemma2_trees(N: int, k: int) -> list[OrientedTree]:
    """The N candidate trees supporting the optimal broadcast from internal node k of L_N.

    Tree r (1 <= r <= N) sends along both chains out of k, except that one
    extra hop r -> k+1 (r < k) or r -> k-1 (r > k) replaces the first hop of
    the opposite chain; r == k is the plain double chain.
    """
    if N < 3:
        raise InvalidSizeError(f"internal broadcast source needs N >= 3, got {N}")
    if not 2 <= k <= N - 1:
        raise BoundaryNodeError(f"node {k} is not internal to L_{N}; boundary sources use a single chain")
    left = [(i, i - 1) for i in range(k, 1, -1)]
    right = [(i, i + 1) for i in range(k, N)]
    trees = []
    for r in range(1, N + 1):
        if r < k:
            edges = left + [(r, k + 1)] + right[1:]
        elif r == k:
            edges = left + right
        else:
            edges = right + [(r, k - 1)] + left[1:]
        trees.append(OrientedTree(k, tuple(edges)))
    return trees


def chain_tree(N: int, k: int) -> OrientedTree:
    """Single chain from a boundary node of L_N to the opposite end."""
    if k == 1:
        return OrientedTree(1, tuple((i, i + 1) for i in range(1, N)))
    if k == N:
        return OrientedTree(N, tuple((i, i - 1) for i in range(N, 1, -1)))
    raise BoundaryNodeError(f"node {k} is internal to L_{N}")
