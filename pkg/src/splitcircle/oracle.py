"""Brute-force ground truth: circle graphs, nested and 2-nested matrices, split graph enumeration."""

from __future__ import annotations

import itertools
import os
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .chord import DEFAULT_CAP, oracle_model_search
from .errors import TooLarge
from .graph import Graph, are_isomorphic, bits, degree_signature, popcount
from .matrix import EnrichedMatrix, TwoNestedCertificate, block_choices, conditions_hold, is_lr_ordering


@dataclass(frozen=True)
class OracleConfig:
    circle_cap: int = DEFAULT_CAP
    matrix_cap: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.circle_cap <= 0 or self.matrix_cap <= 0:
            raise ValueError("caps must be positive")

    @classmethod
    def from_env(cls, **kw) -> OracleConfig:
        cap = os.environ.get("SPLIT_CIRCLE_CAP")
        if cap is not None and "circle_cap" not in kw:
            kw["circle_cap"] = int(cap)
        return cls(**kw)


def oracle_is_circle(g: Graph, cfg: OracleConfig | None = None) -> bool:
    cfg = cfg or OracleConfig.from_env()
    return oracle_model_search(g, cfg.circle_cap) is not None


def oracle_is_nested(rows: Sequence[int], m: int, cfg: OracleConfig | None = None) -> bool:
    """Some column permutation gives every row consecutive ones and all pairs disjoint or nested."""
    cfg = cfg or OracleConfig()
    if m > cfg.matrix_cap:
        raise TooLarge(f"{m} columns exceeds matrix cap {cfg.matrix_cap}")
    for i in range(len(rows)):
        for j in range(len(rows)):
            a, b = rows[i], rows[j]
            if a & b and a & ~b and b & ~a:
                return False
    for perm in itertools.permutations(range(m)):
        ok = True
        for r in rows:
            pos = [p for p, c in enumerate(perm) if (r >> c) & 1]
            if pos and pos[-1] - pos[0] + 1 != len(pos):
                ok = False
                break
        if ok:
            return True
    return False


def oracle_is_2nested(a: EnrichedMatrix, cfg: OracleConfig | None = None) -> tuple[bool, TwoNestedCertificate | None]:
    """Every permutation, every block layout, every red/blue assignment."""
    cfg = cfg or OracleConfig()
    if a.m > cfg.matrix_cap:
        raise TooLarge(f"{a.m} columns exceeds matrix cap {cfg.matrix_cap}")
    for perm in itertools.permutations(range(a.m)):
        if not is_lr_ordering(a, perm):
            continue
        for blocks in block_choices(a, perm):
            for colors in itertools.product(("red", "blue"), repeat=len(blocks)):
                col = dict(zip(blocks, colors))
                if conditions_hold(a, blocks, col):
                    return True, TwoNestedCertificate(tuple(perm), tuple(blocks), tuple(colors))
    return False, None


def _split_graph(k: int, nbhds: Sequence[int]) -> Graph:
    n = k + len(nbhds)
    adj = [0] * n
    kmask = (1 << k) - 1
    for u in range(k):
        adj[u] = kmask & ~(1 << u)
    for i, nb in enumerate(nbhds):
        s = k + i
        adj[s] = nb
        for u in bits(nb):
            adj[u] |= 1 << s
    return Graph(n, adj)


def _invariant(g: Graph) -> tuple:
    tri = []
    for u in range(g.n):
        t = 0
        for v in bits(g.adj[u]):
            t += popcount(g.adj[u] & g.adj[v])
        tri.append((g.degree(u), t))
    return (g.m, degree_signature(g), tuple(sorted(tri)))


def enumerate_split_graphs(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class of split graphs on ``n`` vertices.

    Every split graph has a partition whose stable side vertices each miss at
    least one clique vertex or have degree below |K|, so it suffices to take a
    clique of size ``k`` plus a multiset of neighbourhoods inside it.
    """
    if n > 8:
        raise TooLarge("enumeration is limited to 8 vertices")
    buckets: dict[tuple, list[Graph]] = {}
    out: list[Graph] = []
    for k in range(n + 1):
        subsets = range(1 << k)
        for nbhds in itertools.combinations_with_replacement(subsets, n - k):
            g = _split_graph(k, nbhds)
            key = _invariant(g)
            bucket = buckets.setdefault(key, [])
            if any(are_isomorphic(g, h) for h in bucket):
                continue
            bucket.append(g)
            out.append(g)
    yield from out


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices (n <= 6)."""
    if n > 6:
        raise TooLarge("general enumeration is limited to 6 vertices")
    pairs = list(itertools.combinations(range(n), 2))
    buckets: dict[tuple, list[Graph]] = {}
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        bucket = buckets.setdefault(_invariant(g), [])
        if any(are_isomorphic(g, h) for h in bucket):
            continue
        bucket.append(g)
        yield g


def random_split_graph(rng, n: int, p: float = 0.5) -> Graph:
    """Clique of random size plus stable vertices with random neighbourhoods.

    Clique sizes are drawn from 3..n-3 when possible; smaller or larger
    cliques almost always give permutation graphs.
    """
    k = rng.randint(3, n - 3) if n >= 6 else rng.randint(1, max(1, n - 1))
    nbhds = [sum(1 << u for u in range(k) if rng.random() < p) for _ in range(n - k)]
    return _split_graph(k, nbhds)
