"""Change-sensitive maintenance of the maximal biclique set.

When a batch of edges lands on the graph, the work done here is
proportional to the change it causes, not to the number of maximal
bicliques that exist:

* new maximal bicliques all contain a batch edge, so they are mined from
  the small subgraphs induced by the endpoint neighborhoods of each batch
  edge;
* every biclique that stops being maximal is a maximal biclique of
  ``b - H`` for one of the new bicliques ``b``, so candidates come from
  repeatedly splitting each new biclique at its batch edges and are
  confirmed by membership in the signature store.

Deletions reduce to the addition of the same batch onto the shrunken
graph with the roles of the two change sets swapped; the membership test
is replaced by a direct maximality check because the post-deletion store
is exactly what is being computed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .graph import BatchError, BipartiteGraph, Edge, EdgeBatch
from .mbe import Biclique, maximal_bicliques
from .signatures import SignatureStore, StoreMode


@dataclass(frozen=True, eq=False)
class ChangeSet:
    """The change in the maximal biclique set caused by one update.

    ``new`` holds bicliques that became maximal, ``subsumed`` those that
    stopped being maximal. The two collections are duplicate-free and
    disjoint. Equality ignores ordering.
    """

    new: tuple[Biclique, ...] = ()
    subsumed: tuple[Biclique, ...] = ()

    def __post_init__(self):
        new_set = frozenset(self.new)
        sub_set = frozenset(self.subsumed)
        if len(new_set) != len(self.new) or len(sub_set) != len(self.subsumed):
            raise ValueError("duplicate bicliques in change set")
        if new_set & sub_set:
            raise ValueError("a biclique cannot be both new and subsumed")

    @classmethod
    def from_sets(
        cls, new: Iterable[Biclique], subsumed: Iterable[Biclique]
    ) -> "ChangeSet":
        return cls(tuple(sorted(set(new))), tuple(sorted(set(subsumed))))

    @property
    def is_empty(self) -> bool:
        return not self.new and not self.subsumed

    @property
    def size(self) -> int:
        return len(self.new) + len(self.subsumed)

    @property
    def edge_weight(self) -> int:
        """Total number of edges across all changed bicliques."""
        return sum(b.edge_weight for b in self.new) + sum(
            b.edge_weight for b in self.subsumed
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChangeSet):
            return NotImplemented
        return frozenset(self.new) == frozenset(other.new) and frozenset(
            self.subsumed
        ) == frozenset(other.subsumed)

    def __hash__(self) -> int:
        return hash((frozenset(self.new), frozenset(self.subsumed)))

    def __repr__(self) -> str:
        return f"ChangeSet(new={len(self.new)}, subsumed={len(self.subsumed)})"


@dataclass(frozen=True)
class BatchTimings:
    """Wall-clock split of one update: enumerating the bicliques that
    became maximal vs the ones that stopped being maximal."""

    new_seconds: float = 0.0
    subsumed_seconds: float = 0.0
    total_seconds: float = 0.0

    def combined(self, other: "BatchTimings") -> "BatchTimings":
        return BatchTimings(
            self.new_seconds + other.new_seconds,
            self.subsumed_seconds + other.subsumed_seconds,
            self.total_seconds + other.total_seconds,
        )


@dataclass
class MaintainedState:
    """Graph plus the signature store that mirrors its maximal bicliques
    at the configured size threshold. Owned by a single writer."""

    graph: BipartiteGraph
    store: SignatureStore
    min_side: int = 1
    last_timings: BatchTimings = field(default_factory=BatchTimings)

    @classmethod
    def initialize(
        cls,
        graph: BipartiteGraph,
        min_side: int = 1,
        mode: StoreMode = StoreMode.HASH64,
    ) -> "MaintainedState":
        """Build the store by enumerating the graph once."""
        if min_side < 1:
            raise ValueError("min_side must be >= 1")
        store = SignatureStore(mode)
        for b in maximal_bicliques(graph, min_side):
            store.insert(b)
        return cls(graph=graph, store=store, min_side=min_side)


# -- enumerating new maximal bicliques ---------------------------------------


def iter_new_bicliques(
    graph: BipartiteGraph, batch: EdgeBatch, min_side: int = 1
) -> Iterator[Biclique]:
    """Yield the bicliques that become maximal when ``batch`` is added.

    Each is produced exactly once: a biclique containing several batch
    edges is attributed to the earliest one in batch order.
    """
    updated = graph.add_edges(batch)
    return _iter_new_on_updated(updated, batch, min_side)


def _iter_new_on_updated(
    updated: BipartiteGraph, batch: EdgeBatch, min_side: int
) -> Iterator[Biclique]:
    earlier: list[Edge] = []
    for e in batch:
        local = updated.edge_subgraph(e)
        for b in maximal_bicliques(local, min_side):
            left_set = set(b.left)
            right_set = set(b.right)
            if any(p.u in left_set and p.v in right_set for p in earlier):
                continue
            yield b
        earlier.append(e)


# -- enumerating subsumed bicliques -------------------------------------------


def split_bicliques(b: Biclique, edges: Iterable[Edge]) -> set[Biclique]:
    """All candidates for maximal bicliques of ``b`` minus the given edges.

    Produced by iterated vertex-removal splitting: removing edge (u, v)
    from a biclique leaves the two bicliques obtained by dropping u or
    dropping v. The result contains every maximal biclique of the edge-
    deleted subgraph, has at most ``2**k`` members for k relevant edges,
    and discards members with an empty side.
    """
    if isinstance(edges, EdgeBatch):
        edges = edges.edges
    left_set = set(b.left)
    right_set = set(b.right)
    inside = [e for e in edges if e.u in left_set and e.v in right_set]
    frontier: set[Biclique] = {b}
    for e in inside:
        grown: set[Biclique] = set()
        for c in frontier:
            if e.u in c.left and e.v in c.right:
                grown.add(
                    Biclique(tuple(x for x in c.left if x != e.u), c.right)
                )
                grown.add(
                    Biclique(c.left, tuple(y for y in c.right if y != e.v))
                )
            else:
                grown.add(c)
        frontier = grown
    assert len(frontier) <= (1 << len(inside))
    return {c for c in frontier if c.left and c.right}


def iter_subsumed(
    store: SignatureStore,
    batch: EdgeBatch,
    new_bicliques: Iterable[Biclique],
) -> Iterator[Biclique]:
    """Yield the bicliques that stopped being maximal, each exactly once.

    ``store`` must represent the pre-update graph and ``new_bicliques``
    must stream every new maximal biclique exactly once. The same
    subsumed biclique can be reachable from several new ones; output is
    deduplicated globally.
    """
    emitted: set[Biclique] = set()
    for b in new_bicliques:
        for candidate in sorted(split_bicliques(b, batch)):
            if candidate in emitted:
                continue
            emitted.add(candidate)
            if store.contains(candidate):
                yield candidate


# -- maintained-state updates --------------------------------------------------


def apply_additions(state: MaintainedState, batch: EdgeBatch) -> ChangeSet:
    """Add a batch of edges, emit the change, commit graph and store.

    All-or-nothing: a rejected batch leaves the state untouched.
    """
    start = time.perf_counter()
    updated = state.graph.add_edges(batch)
    new = list(_iter_new_on_updated(updated, batch, state.min_side))
    mid = time.perf_counter()
    subsumed = list(iter_subsumed(state.store, batch, new))
    done = time.perf_counter()
    changes = ChangeSet(tuple(new), tuple(subsumed))
    state.store.apply_changeset(changes.new, changes.subsumed)
    state.graph = updated
    state.last_timings = BatchTimings(
        new_seconds=mid - start,
        subsumed_seconds=done - mid,
        total_seconds=time.perf_counter() - start,
    )
    return changes


def apply_additions_streaming(
    state: MaintainedState,
    batch: EdgeBatch,
    on_new: Callable[[Biclique], None] | None = None,
    on_subsumed: Callable[[Biclique], None] | None = None,
) -> tuple[int, int]:
    """Sink-driven variant of :func:`apply_additions`.

    Nothing is materialized: new bicliques flow through the store and the
    sinks as they are found, so memory stays at one biclique at a time.
    Inserting a new biclique before splitting it is safe because no split
    candidate can itself be new (it is properly contained in a maximal
    biclique of the updated graph), and removing subsumed members as they
    are emitted doubles as the global deduplication.
    """
    updated = state.graph.add_edges(batch)
    n_new = n_sub = 0
    for b in _iter_new_on_updated(updated, batch, state.min_side):
        state.store.insert(b)
        n_new += 1
        if on_new is not None:
            on_new(b)
        for candidate in sorted(split_bicliques(b, batch)):
            if state.store.contains(candidate):
                state.store.remove(candidate)
                n_sub += 1
                if on_subsumed is not None:
                    on_subsumed(candidate)
    state.graph = updated
    return n_new, n_sub


def apply_deletions(state: MaintainedState, batch: EdgeBatch) -> ChangeSet:
    """Delete a batch of edges, emit the change, commit graph and store.

    Reduction to the additive case: the bicliques that stop being maximal
    are exactly the new bicliques of (shrunken graph + batch), and the
    bicliques that become maximal are split candidates of those, accepted
    by a direct maximality test against the shrunken graph.
    """
    start = time.perf_counter()
    remaining = state.graph.remove_edges(batch)
    lost = list(_iter_new_on_updated(state.graph, batch, state.min_side))
    mid = time.perf_counter()
    gained: list[Biclique] = []
    seen: set[Biclique] = set()
    s = state.min_side
    for b in lost:
        for candidate in sorted(split_bicliques(b, batch)):
            if candidate in seen:
                continue
            seen.add(candidate)
            if len(candidate.left) < s or len(candidate.right) < s:
                continue
            if remaining.is_maximal_biclique(candidate):
                gained.append(candidate)
    done = time.perf_counter()
    changes = ChangeSet(tuple(gained), tuple(lost))
    state.store.apply_changeset(changes.new, changes.subsumed)
    state.graph = remaining
    state.last_timings = BatchTimings(
        new_seconds=done - mid,
        subsumed_seconds=mid - start,
        total_seconds=time.perf_counter() - start,
    )
    return changes


def compose_changesets(first: ChangeSet, second: ChangeSet) -> ChangeSet:
    """Net change across two consecutive updates.

    A biclique created by the first step and destroyed by the second (or
    vice versa) cancels out.
    """
    new1, sub1 = frozenset(first.new), frozenset(first.subsumed)
    new2, sub2 = frozenset(second.new), frozenset(second.subsumed)
    net_new = (new1 - sub2) | (new2 - sub1)
    net_sub = (sub1 - new2) | (sub2 - new1)
    return ChangeSet.from_sets(net_new, net_sub)


def apply_mixed(
    state: MaintainedState, adds: EdgeBatch, dels: EdgeBatch
) -> ChangeSet:
    """Apply additions then deletions; return the net change.

    Deletions are validated against the intermediate graph, so a batch
    may delete an edge it just added. Both batches are validated up front
    so a rejected update leaves the state untouched.
    """
    intermediate = state.graph.add_edges(adds)
    for e in dels:
        if not intermediate.has_edge(e):
            raise BatchError(f"edge not present after additions: {e}", edge=e)
    first = apply_additions(state, adds)
    timings = state.last_timings
    second = apply_deletions(state, dels)
    state.last_timings = timings.combined(state.last_timings)
    return compose_changesets(first, second)
