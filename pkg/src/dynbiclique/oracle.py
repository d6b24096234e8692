"""Ground-truth enumeration and the full re-enumeration baseline.

The brute-force enumerator is deliberately independent of the production
miner: it works on bitmask adjacency rows and closes every subset of the
smaller side, so the two can check each other. It also supports the
trivial-inclusive counting convention, where maximal bicliques with one
empty side are admitted; the extremal bounds on the number of maximal
bicliques are stated under that convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import ChangeSet
from .graph import BipartiteGraph, EdgeBatch
from .mbe import Biclique, maximal_bicliques

#: Brute force refuses graphs with more vertices than this.
ORACLE_VERTEX_LIMIT = 20


class OracleSizeError(ValueError):
    """The graph is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class Convention:
    """Counting convention for the brute-force enumerator.

    ``include_trivial`` admits maximal bicliques with one empty side
    (used only for extremal bound checks); otherwise both sides must
    reach ``min_side``.
    """

    include_trivial: bool
    min_side: int = 1

    def __post_init__(self):
        if not self.include_trivial and self.min_side < 1:
            raise ValueError("non-trivial convention needs min_side >= 1")

    @classmethod
    def non_trivial(cls, min_side: int = 1) -> "Convention":
        return cls(include_trivial=False, min_side=min_side)

    @classmethod
    def trivial_inclusive(cls) -> "Convention":
        return cls(include_trivial=True, min_side=0)


def brute_force_bicliques(
    graph: BipartiteGraph, convention: Convention | None = None
) -> list[Biclique]:
    """Exact set of maximal bicliques by subset enumeration.

    Every maximal biclique with both sides non-empty is the closure of
    its smaller-side vertex set, so closing all subsets of the smaller
    side (as bitmasks) finds them all; the two degenerate closures
    (everything, nothing) and (nothing, everything) cover the trivial
    ones. Deterministic output order.
    """
    if convention is None:
        convention = Convention.non_trivial(1)
    if graph.vertex_count > ORACLE_VERTEX_LIMIT:
        raise OracleSizeError(
            f"{graph.vertex_count} vertices exceed the brute-force limit "
            f"of {ORACLE_VERTEX_LIMIT}"
        )
    if graph.vertex_count == 0:
        return []

    left_ids = sorted(graph.adj_left)
    right_ids = sorted(graph.adj_right)
    swap = len(left_ids) > len(right_ids)
    if swap:
        small_ids, big_ids = right_ids, left_ids
        small_adj_src, big_adj_src = graph.adj_right, graph.adj_left
    else:
        small_ids, big_ids = left_ids, right_ids
        small_adj_src, big_adj_src = graph.adj_left, graph.adj_right

    big_index = {vid: i for i, vid in enumerate(big_ids)}
    small_index = {vid: i for i, vid in enumerate(small_ids)}
    small_rows = [
        sum(1 << big_index[w] for w in small_adj_src[vid]) for vid in small_ids
    ]
    big_rows = [
        sum(1 << small_index[w] for w in big_adj_src[vid]) for vid in big_ids
    ]
    k = len(small_ids)
    full_big = (1 << len(big_ids)) - 1
    full_small = (1 << k) - 1

    # Common neighborhood of every subset of the small side, computed
    # incrementally over the subset lattice.
    gamma = [0] * (1 << k)
    gamma[0] = full_big
    pairs: set[tuple[int, int]] = set()
    closure_of: dict[int, int] = {}
    for mask in range(1 << k):
        if mask:
            low = mask & -mask
            gamma[mask] = gamma[mask ^ low] & small_rows[low.bit_length() - 1]
        nbrs = gamma[mask]
        if nbrs == 0:
            pairs.add((full_small, 0))
            continue
        closed = closure_of.get(nbrs)
        if closed is None:
            closed = full_small
            rest = nbrs
            while rest:
                low = rest & -rest
                closed &= big_rows[low.bit_length() - 1]
                rest ^= low
            closure_of[nbrs] = closed
        pairs.add((closed, nbrs))

    def ids_of(mask: int, universe: list[int]) -> tuple[int, ...]:
        return tuple(universe[i] for i in range(len(universe)) if mask >> i & 1)

    out = []
    for small_mask, big_mask in pairs:
        small_side = ids_of(small_mask, small_ids)
        big_side = ids_of(big_mask, big_ids)
        b = Biclique(big_side, small_side) if swap else Biclique(small_side, big_side)
        if convention.include_trivial:
            out.append(b)
        elif (
            len(b.left) >= convention.min_side
            and len(b.right) >= convention.min_side
        ):
            out.append(b)
    out.sort()
    return out


def brute_force_changeset(
    graph: BipartiteGraph, batch: EdgeBatch, min_side: int = 1
) -> ChangeSet:
    """Change set by brute-force enumeration of both graphs."""
    convention = Convention.non_trivial(min_side)
    before = set(brute_force_bicliques(graph, convention))
    after = set(brute_force_bicliques(graph.add_edges(batch), convention))
    return ChangeSet.from_sets(after - before, before - after)


def enumeration_diff(
    before: BipartiteGraph, after: BipartiteGraph, min_side: int = 1
) -> ChangeSet:
    """Change set by running the miner on both graphs and diffing."""
    old = set(maximal_bicliques(before, min_side))
    new = set(maximal_bicliques(after, min_side))
    return ChangeSet.from_sets(new - old, old - new)


def baseline_changeset(
    graph: BipartiteGraph, batch: EdgeBatch, min_side: int = 1
) -> ChangeSet:
    """The change-insensitive reference: enumerate the maximal bicliques
    of the graph before and after the batch and take the difference.

    Semantically identical to the maintained-state result, but pays the
    cost of two full enumerations no matter how small the change is.
    """
    return enumeration_diff(graph, graph.add_edges(batch), min_side)
