"""Bipartite graph with batched edge updates.

Vertices on the two sides live in independent non-negative integer id
spaces: left 3 and right 3 are different vertices. Update operations
validate a whole batch first and then return a new graph, so a rejected
batch never leaves half-applied state behind. Vertices persist once
registered, even after losing all their edges; edge streams that delete
and re-add edges rely on stable vertex identity.

Instances are single-writer values: once a graph has been handed to a
reader it must not be mutated, which makes them safe to share between
threads without locking.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Iterator, NamedTuple

if TYPE_CHECKING:  # pragma: no cover
    from .mbe import Biclique


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class Edge(NamedTuple):
    """Edge from left vertex ``u`` to right vertex ``v``."""

    u: int
    v: int


class GraphError(Exception):
    """Base class for graph precondition violations."""


class BatchError(GraphError):
    """A batch was rejected as a whole; ``edge`` is the offending edge."""

    def __init__(self, message: str, edge: Edge | None = None):
        super().__init__(message)
        self.edge = edge


class MissingVertexError(GraphError):
    """A queried vertex is not registered in the graph."""


class MissingEdgeError(GraphError):
    """An operation required an edge that is not present."""


@dataclass(frozen=True)
class EdgeBatch:
    """Ordered sequence of distinct edges applied as one atomic update."""

    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        seen: set[Edge] = set()
        for e in self.edges:
            if e.u < 0 or e.v < 0:
                raise BatchError(f"negative vertex id in edge {e}", edge=e)
            if e in seen:
                raise BatchError(f"duplicate edge in batch: {e}", edge=e)
            seen.add(e)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "EdgeBatch":
        """Build a batch from (left, right) integer pairs."""
        return cls(tuple(Edge(int(u), int(v)) for u, v in pairs))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __bool__(self) -> bool:
        return bool(self.edges)


class BipartiteGraph:
    """Bipartite graph stored as adjacency sets on both sides.

    The symmetry invariant (``v in adj_left[u]`` iff ``u in adj_right[v]``)
    holds by construction; no public operation can break it.
    """

    __slots__ = ("_adj_left", "_adj_right", "_m")

    def __init__(self):
        self._adj_left: dict[int, set[int]] = {}
        self._adj_right: dict[int, set[int]] = {}
        self._m = 0

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]] = (),
        left_vertices: Iterable[int] = (),
        right_vertices: Iterable[int] = (),
    ) -> "BipartiteGraph":
        """Build a graph from edges, plus optional isolated vertices."""
        g = cls()
        for u in left_vertices:
            g._adj_left.setdefault(int(u), set())
        for v in right_vertices:
            g._adj_right.setdefault(int(v), set())
        for u, v in edges:
            e = Edge(int(u), int(v))
            if g.has_edge(e):
                raise BatchError(f"duplicate edge: {e}", edge=e)
            g._insert(e)
        return g

    # -- internal helpers ------------------------------------------------

    def _insert(self, e: Edge) -> None:
        self._adj_left.setdefault(e.u, set()).add(e.v)
        self._adj_right.setdefault(e.v, set()).add(e.u)
        self._m += 1

    def _delete(self, e: Edge) -> None:
        self._adj_left[e.u].discard(e.v)
        self._adj_right[e.v].discard(e.u)
        self._m -= 1

    def _copy(self) -> "BipartiteGraph":
        g = BipartiteGraph()
        g._adj_left = {u: set(nbrs) for u, nbrs in self._adj_left.items()}
        g._adj_right = {v: set(nbrs) for v, nbrs in self._adj_right.items()}
        g._m = self._m
        return g

    def _adj(self, side: Side) -> dict[int, set[int]]:
        return self._adj_left if side is Side.LEFT else self._adj_right

    # -- queries ----------------------------------------------------------

    @property
    def adj_left(self) -> dict[int, set[int]]:
        """Left adjacency (left id -> set of right ids). Do not mutate."""
        return self._adj_left

    @property
    def adj_right(self) -> dict[int, set[int]]:
        """Right adjacency (right id -> set of left ids). Do not mutate."""
        return self._adj_right

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def left_count(self) -> int:
        return len(self._adj_left)

    @property
    def right_count(self) -> int:
        return len(self._adj_right)

    @property
    def vertex_count(self) -> int:
        return len(self._adj_left) + len(self._adj_right)

    def left_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj_left))

    def right_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj_right))

    def has_vertex(self, side: Side, vid: int) -> bool:
        return vid in self._adj(side)

    def has_edge(self, e: Edge) -> bool:
        nbrs = self._adj_left.get(e.u)
        return nbrs is not None and e.v in nbrs

    def edges(self) -> Iterator[Edge]:
        """All edges in sorted (u, v) order."""
        for u in sorted(self._adj_left):
            for v in sorted(self._adj_left[u]):
                yield Edge(u, v)

    def neighbors(self, side: Side, vid: int) -> frozenset[int]:
        adj = self._adj(side)
        if vid not in adj:
            raise MissingVertexError(f"no {side.value} vertex {vid}")
        return frozenset(adj[vid])

    def degree(self, side: Side, vid: int) -> int:
        adj = self._adj(side)
        if vid not in adj:
            raise MissingVertexError(f"no {side.value} vertex {vid}")
        return len(adj[vid])

    def max_degree(self) -> int:
        degrees = [len(s) for s in self._adj_left.values()]
        degrees += [len(s) for s in self._adj_right.values()]
        return max(degrees, default=0)

    def min_degree(self) -> int:
        """Minimum degree over all vertices; a statistic only."""
        degrees = [len(s) for s in self._adj_left.values()]
        degrees += [len(s) for s in self._adj_right.values()]
        return min(degrees, default=0)

    # -- batched updates ---------------------------------------------------

    def add_edges(self, batch: EdgeBatch) -> "BipartiteGraph":
        """Return a new graph with the batch added.

        Endpoints that are not registered yet are created on their declared
        side. Rejects the whole batch if any edge is already present.
        """
        for e in batch:
            if self.has_edge(e):
                raise BatchError(f"edge already present: {e}", edge=e)
        g = self._copy()
        for e in batch:
            g._insert(e)
        return g

    def remove_edges(self, batch: EdgeBatch) -> "BipartiteGraph":
        """Return a new graph with the batch removed.

        Vertices are never deleted implicitly; isolated vertices persist.
        Rejects the whole batch if any edge is absent.
        """
        for e in batch:
            if not self.has_edge(e):
                raise BatchError(f"edge not present: {e}", edge=e)
        g = self._copy()
        for e in batch:
            g._delete(e)
        return g

    # -- local structure ----------------------------------------------------

    def edge_subgraph(self, e: Edge) -> "BipartiteGraph":
        """Subgraph induced by the neighborhoods of the endpoints of ``e``.

        The left side is the neighborhood of ``e.v`` and the right side the
        neighborhood of ``e.u``; every maximal biclique of this subgraph is
        exactly a maximal biclique of the host graph that contains ``e``.
        Requires ``e`` to be present.
        """
        if not self.has_edge(e):
            raise MissingEdgeError(f"edge not in graph: {e}")
        left = self._adj_right[e.v]
        right = self._adj_left[e.u]
        g = BipartiteGraph()
        g._adj_right = {v: set() for v in right}
        adj_l = {}
        m = 0
        for u in left:
            nbrs = self._adj_left[u] & right
            adj_l[u] = nbrs
            for v in nbrs:
                g._adj_right[v].add(u)
            m += len(nbrs)
        g._adj_left = adj_l
        g._m = m
        return g

    def is_maximal_biclique(self, biclique: "Biclique") -> bool:
        """Direct maximality test: both sides must be exactly the common
        neighborhood of the other side.

        Both sides of ``biclique`` must be non-empty and all its vertices
        must exist in the graph.
        """
        xs, ys = biclique.left, biclique.right
        if not xs or not ys:
            raise ValueError("biclique has an empty side")
        for u in xs:
            if u not in self._adj_left:
                raise MissingVertexError(f"no left vertex {u}")
        for v in ys:
            if v not in self._adj_right:
                raise MissingVertexError(f"no right vertex {v}")
        common_right = set(self._adj_left[xs[0]])
        for u in xs[1:]:
            common_right &= self._adj_left[u]
            if not common_right:
                return False
        if common_right != set(ys):
            return False
        common_left = set(self._adj_right[ys[0]])
        for v in ys[1:]:
            common_left &= self._adj_right[v]
        return common_left == set(xs)

    # -- value semantics -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self._adj_left == other._adj_left
            and self._adj_right == other._adj_right
        )

    def __repr__(self) -> str:
        return (
            f"BipartiteGraph(|L|={self.left_count}, |R|={self.right_count}, "
            f"m={self._m})"
        )
