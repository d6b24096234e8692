"""Output-sensitive enumeration of maximal bicliques in a static graph.

The miner is an LMBC-style depth-first search over closed vertex sets of
the smaller bipartition side: every maximal biclique with both sides
non-empty is the Galois closure of its smaller-side vertex set, and the
search visits each closure exactly once. The per-side size threshold
``min_side`` prunes branches whose common neighborhood drops below it.
Emission order is deterministic for a given graph.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, NamedTuple

from .graph import BipartiteGraph, Edge, MissingVertexError


class Biclique(NamedTuple):
    """A biclique in canonical form: both sides sorted and duplicate-free.

    ``left`` and ``right`` must be built through :meth:`make` unless the
    caller guarantees sortedness; equality and hashing rely on it.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    @classmethod
    def make(cls, left: Iterable[int], right: Iterable[int]) -> "Biclique":
        return cls(tuple(sorted(set(left))), tuple(sorted(set(right))))

    @property
    def edge_weight(self) -> int:
        """Number of edges spanned, |X| * |Y|."""
        return len(self.left) * len(self.right)

    def contains_edge(self, e: Edge) -> bool:
        return e.u in self.left and e.v in self.right

    def properly_contains(self, other: "Biclique") -> bool:
        """True when ``other`` is a proper sub-biclique of this one."""
        if self == other:
            return False
        return set(other.left) <= set(self.left) and set(other.right) <= set(
            self.right
        )

    def __str__(self) -> str:
        ls = ",".join(map(str, self.left))
        rs = ",".join(map(str, self.right))
        return f"({{{ls}}},{{{rs}}})"


def closure(graph: BipartiteGraph, left_vertices: Iterable[int]) -> Biclique:
    """Galois closure of a non-empty left vertex set.

    Returns (X', Y) with Y the common neighborhood of the input and X' the
    common neighborhood of Y. When Y is empty the result degenerates to
    (all left vertices, empty right side), detectable by the empty side.
    """
    xs = sorted(set(left_vertices))
    if not xs:
        raise ValueError("closure of the empty set is not defined")
    adj = graph.adj_left
    for u in xs:
        if u not in adj:
            raise MissingVertexError(f"no left vertex {u}")
    common = set(adj[xs[0]])
    for u in xs[1:]:
        common &= adj[u]
    if not common:
        return Biclique(tuple(sorted(adj)), ())
    return Biclique.make(_common_neighbors(graph.adj_right, common), common)


def _common_neighbors(adj: dict[int, set[int]], vertices: set[int]) -> set[int]:
    """Intersection of adj[v] over a non-empty vertex set."""
    ordered = sorted(vertices, key=lambda v: len(adj[v]))
    out = set(adj[ordered[0]])
    for v in ordered[1:]:
        out &= adj[v]
        if not out:
            break
    return out


def maximal_bicliques(
    graph: BipartiteGraph, min_side: int = 1
) -> Iterator[Biclique]:
    """Yield every maximal biclique with both sides of size >= ``min_side``.

    Each biclique is produced exactly once, in canonical form; bicliques
    with an empty side are never produced.
    """
    if min_side < 1:
        raise ValueError("min_side must be >= 1")
    if graph.left_count <= graph.right_count:
        expand, other, left_first = graph.adj_left, graph.adj_right, True
    else:
        expand, other, left_first = graph.adj_right, graph.adj_left, False
    if not expand or not other:
        return
    universe = set(other)
    tail = sorted(expand)
    yield from _expand(expand, other, set(), universe, tail, min_side, left_first)


def _expand(
    expand: dict[int, set[int]],
    other: dict[int, set[int]],
    closed: set[int],
    gamma: set[int],
    tail: list[int],
    min_side: int,
    left_first: bool,
) -> Iterator[Biclique]:
    # Prune tail vertices whose addition drops the common neighborhood
    # below the threshold, then grow in ascending neighborhood order.
    kept: list[int] = []
    gammas: dict[int, set[int]] = {}
    for v in tail:
        g = gamma & expand[v]
        if len(g) >= min_side:
            kept.append(v)
            gammas[v] = g
    if len(closed) + len(kept) < min_side:
        return
    kept.sort(key=lambda v: (len(gammas[v]), v))
    tail_set = set(kept)
    for v in kept:
        tail_set.discard(v)
        if len(closed) + 1 + len(tail_set) < min_side:
            continue
        nbrs = gammas[v]
        closure_set = _common_neighbors(other, nbrs)
        # Canonicity: expand only when the closure adds no vertex that an
        # earlier branch already owns.
        if not (closure_set - closed - {v}) <= tail_set:
            continue
        if len(closure_set) >= min_side:
            if left_first:
                yield Biclique(tuple(sorted(closure_set)), tuple(sorted(nbrs)))
            else:
                yield Biclique(tuple(sorted(nbrs)), tuple(sorted(closure_set)))
        # Candidates for deeper growth must share a neighbor with the
        # current neighborhood; anything else would be pruned anyway.
        reach: set[int] = set()
        for u in nbrs:
            reach |= other[u]
        child_tail = sorted((tail_set - closure_set) & reach)
        if child_tail:
            yield from _expand(
                expand, other, closure_set, nbrs, child_tail, min_side, left_first
            )


def mine_bicliques(
    graph: BipartiteGraph,
    min_side: int = 1,
    sink: Callable[[Biclique], None] | None = None,
) -> int:
    """Drive the miner through a sink callback; returns the emitted count."""
    count = 0
    for b in maximal_bicliques(graph, min_side):
        if sink is not None:
            sink(b)
        count += 1
    return count
