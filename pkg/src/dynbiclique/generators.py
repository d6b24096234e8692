"""Graph and edge-stream generators for tests and benchmarks.

Randomness comes from splitmix64 (Steele/Lea/Flood; Vigna's constants),
a counter-based 64-bit generator small enough to re-specify in any
language: the i-th draw from seed s is mix(s + i * 0x9E3779B97F4A7C15)
where mix xors and multiplies by 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB. Being counter-based, sequential and vectorized
evaluation produce identical streams, so corpora are reproducible
bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import BipartiteGraph, Edge, EdgeBatch

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential splitmix64 stream."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, n: int) -> int:
        """Uniform in [0, n); modulo bias is irrelevant at these sizes."""
        return self.next_u64() % n


def _u64_draws(seed: int, count: int) -> np.ndarray:
    """The first ``count`` draws of SplitMix64(seed), vectorized."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & _MASK64) + idx * np.uint64(_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def cocktail_party(k: int) -> BipartiteGraph:
    """Complete bipartite graph on k + k vertices minus a perfect matching
    (the crown / cocktail-party graph): left i joins right p for i != p.

    Extremal for the number of maximal bicliques: counting the two
    trivial ones, it has exactly 2**k of them.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    edges = [(i, p) for i in range(k) for p in range(k) if i != p]
    return BipartiteGraph.from_edges(edges, range(k), range(k))


def single_edge_extremal(n: int) -> tuple[BipartiteGraph, Edge]:
    """Worst-case instance for a single edge addition on ``n`` vertices.

    The core on left' x right' is a cocktail-party graph; an extra left
    vertex u joins all of right', an extra right vertex v joins all of
    left', and the returned edge e = (u, v) is absent. Adding e changes
    the maximal biclique set by exactly 3 * 2**((n - 2) / 2) under the
    trivial-inclusive convention, which is the maximum possible.
    """
    if n < 4 or n % 2:
        raise ValueError("n must be an even integer >= 4")
    k = n // 2 - 1
    edges = [(i, p) for i in range(1, k + 1) for p in range(1, k + 1) if i != p]
    edges += [(0, p) for p in range(1, k + 1)]  # u = left 0 joins right core
    edges += [(i, 0) for i in range(1, k + 1)]  # v = right 0 joins left core
    graph = BipartiteGraph.from_edges(edges, range(k + 1), range(k + 1))
    return graph, Edge(0, 0)


def random_bipartite(
    n_left: int, n_right: int, p: float, seed: int
) -> BipartiteGraph:
    """Each of the n_left * n_right potential edges is present
    independently with probability ``p``; deterministic per seed.

    Edge (i, j) is decided by draw number i * n_right + j + 1 of
    SplitMix64(seed) compared against floor(p * 2**64).
    """
    if n_left < 1 or n_right < 1:
        raise ValueError("both sides need at least one vertex")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    total = n_left * n_right
    if p <= 0.0:
        edges: list[tuple[int, int]] = []
    elif p >= 1.0:
        edges = [(i, j) for i in range(n_left) for j in range(n_right)]
    else:
        # float rounding can push p * 2**64 to exactly 2**64 for p close
        # to 1; clamp into the representable range
        threshold = np.uint64(min(int(p * 2.0**64), _MASK64))
        draws = _u64_draws(seed, total)
        hits = np.nonzero(draws < threshold)[0]
        edges = [(int(i) // n_right, int(i) % n_right) for i in hits]
    return BipartiteGraph.from_edges(edges, range(n_left), range(n_right))


@dataclass(frozen=True)
class StreamSpec:
    """How to turn a graph into an initial graph plus an edge stream."""

    retain_fraction: float
    batch_size: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.retain_fraction <= 1.0:
            raise ValueError("retain_fraction must be in [0, 1]")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def make_stream(
    graph: BipartiteGraph, spec: StreamSpec
) -> tuple[BipartiteGraph, list[EdgeBatch]]:
    """Split a graph into a retained initial graph and addition batches.

    Each edge is retained with probability ``retain_fraction``; the rest
    are shuffled and grouped into batches of ``batch_size`` (the last one
    may be short). Replaying all batches onto the initial graph rebuilds
    the input graph exactly, vertices included.
    """
    rng = SplitMix64(spec.seed)
    retained: list[Edge] = []
    streamed: list[Edge] = []
    for e in graph.edges():
        if rng.next_float() < spec.retain_fraction:
            retained.append(e)
        else:
            streamed.append(e)
    for i in range(len(streamed) - 1, 0, -1):  # Fisher-Yates
        j = rng.next_below(i + 1)
        streamed[i], streamed[j] = streamed[j], streamed[i]
    initial = BipartiteGraph.from_edges(
        retained, graph.left_ids(), graph.right_ids()
    )
    batches = [
        EdgeBatch(tuple(streamed[i : i + spec.batch_size]))
        for i in range(0, len(streamed), spec.batch_size)
    ]
    return initial, batches
