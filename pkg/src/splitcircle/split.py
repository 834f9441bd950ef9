"""Split partitions, anchor detection and the two split decompositions used by recognition."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ForbiddenFound, InternalInconsistency, NotDecomposable, NotSplit, WrongCase
from .graph import Graph, bits, find_induced, split_composition


@dataclass(frozen=True)
class SplitPartition:
    K: tuple[int, ...]
    S: tuple[int, ...]

    @property
    def kmask(self) -> int:
        return sum(1 << v for v in self.K)

    @property
    def smask(self) -> int:
        return sum(1 << v for v in self.S)


def is_split_partition(g: Graph, K, S) -> bool:
    ks, ss = set(K), set(S)
    if ks & ss or ks | ss != set(range(g.n)):
        return False
    kmask = sum(1 << v for v in ks)
    smask = sum(1 << v for v in ss)
    return all(kmask & ~(1 << v) & ~g.adj[v] == 0 for v in ks) and all(g.adj[v] & smask == 0 for v in ss)


def split_partition(g: Graph) -> SplitPartition:
    """Partition with |K| maximum; ties broken by the lexicographically least sorted K.

    Uses the degree-sequence test: with degrees sorted decreasingly and m the
    largest i with d_i >= i-1, the graph is split iff the top m vertices form
    a clique and the rest is independent.
    """
    n = g.n
    if n == 0:
        return SplitPartition((), ())
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    m = max(i for i in range(1, n + 1) if g.degree(order[i - 1]) >= i - 1)
    K = sorted(order[:m])
    S = sorted(order[m:])
    if not is_split_partition(g, K, S):
        raise NotSplit("graph has no clique/stable-set partition")
    kmask = sum(1 << v for v in K)
    smask = sum(1 << v for v in S)
    # a clique of maximum size: grow K by any S vertex complete to it
    for s in S:
        if g.adj[s] & kmask == kmask:
            K = sorted(K + [s])
            S = [v for v in S if v != s]
            kmask |= 1 << s
            smask &= ~(1 << s)
            break
    best = tuple(K)
    # other maximum partitions swap one clique vertex v for a stable vertex s with N(s) = K - v
    for s in S:
        nb = g.adj[s] & kmask
        if bin(nb).count("1") != len(K) - 1:
            continue
        v = (kmask & ~nb).bit_length() - 1
        if g.adj[v] & smask & ~(1 << s):
            continue
        cand = tuple(sorted([u for u in K if u != v] + [s]))
        if cand < best:
            best = cand
    rest = tuple(v for v in range(n) if v not in best)
    if not is_split_partition(g, best, rest):
        raise InternalInconsistency("split partition construction failed")
    return SplitPartition(best, rest)


# ---------------------------------------------------------------- anchors

# named anchor graphs: (names, K-names, edges)
ANCHORS = {
    "Tent": (
        ["k1", "k3", "k5", "s13", "s35", "s51"],
        {"k1", "k3", "k5"},
        [("k1", "k3"), ("k3", "k5"), ("k1", "k5"), ("s13", "k1"), ("s13", "k3"), ("s35", "k3"), ("s35", "k5"), ("s51", "k5"), ("s51", "k1")],
    ),
    "FourTent": (
        ["k1", "k2", "k4", "k5", "s12", "s24", "s45"],
        {"k1", "k2", "k4", "k5"},
        [("k1", "k2"), ("k1", "k4"), ("k1", "k5"), ("k2", "k4"), ("k2", "k5"), ("k4", "k5"),
         ("s12", "k1"), ("s12", "k2"), ("s24", "k2"), ("s24", "k4"), ("s45", "k4"), ("s45", "k5")],
    ),
    "CoFourTent": (
        ["k1", "k3", "k5", "s13", "s35", "s1", "s5"],
        {"k1", "k3", "k5"},
        [("k1", "k3"), ("k3", "k5"), ("k1", "k5"), ("s13", "k1"), ("s13", "k3"), ("s35", "k3"), ("s35", "k5"), ("s1", "k1"), ("s5", "k5")],
    ),
    "Net": (
        ["k1", "k3", "k5", "s1", "s3", "s5"],
        {"k1", "k3", "k5"},
        [("k1", "k3"), ("k3", "k5"), ("k1", "k5"), ("s1", "k1"), ("s3", "k3"), ("s5", "k5")],
    ),
}


def anchor_graph(kind: str) -> Graph:
    names, _, edges = ANCHORS[kind]
    idx = {nm: i for i, nm in enumerate(names)}
    return Graph.from_edges(len(names), [(idx[a], idx[b]) for a, b in edges])


@dataclass(frozen=True)
class CaseWitness:
    kind: str  # Tent, FourTent, CoFourTent, Net or None
    embedding: dict[str, int]


def find_anchor(g: Graph, sp: SplitPartition, kind: str) -> dict[str, int] | None:
    """Lexicographically least typed embedding of an anchor, keyed by vertex name."""
    names, knames, _ = ANCHORS[kind]
    pat = anchor_graph(kind)
    allowed = [sp.kmask if nm in knames else sp.smask for nm in names]
    emb = find_induced(g, pat, allowed=allowed, order=list(range(pat.n)))
    if emb is None:
        return None
    return {names[p]: h for p, h in emb.items()}


def detect_case(g: Graph, sp: SplitPartition) -> CaseWitness:
    for kind in ("Tent", "FourTent", "CoFourTent", "Net"):
        emb = find_anchor(g, sp, kind)
        if emb is not None:
            return CaseWitness(kind, emb)
    return CaseWitness("None", {})


# ---------------------------------------------------------------- decompositions


@dataclass(frozen=True)
class Decomposition:
    """Two factors whose split composition at the markers gives back the graph.

    ``map1[i]`` / ``map2[i]`` give the original vertex of factor vertex ``i``
    (``-1`` for the marker).
    """

    g1: Graph
    marker1: int
    map1: tuple[int, ...]
    g2: Graph
    marker2: int
    map2: tuple[int, ...]


def _factor(g: Graph, side: list[int], marker_nbrs: int) -> tuple[Graph, int, tuple[int, ...]]:
    """Induced subgraph on ``side`` plus a marker adjacent to ``marker_nbrs``."""
    n = len(side)
    idx = {v: i for i, v in enumerate(side)}
    edges = [(idx[u], idx[v]) for u in side for v in side if u < v and g.has_edge(u, v)]
    edges += [(idx[v], n) for v in bits(marker_nbrs) if v in idx]
    return Graph.from_edges(n + 1, edges), n, tuple(side) + (-1,)


def decompose_on_split(g: Graph, a_side: list[int]) -> Decomposition:
    """Split decomposition for a bipartition (A, B) that forms a split.

    Requires that the A-vertices with neighbours in B all see the same set of
    B-vertices, and both sides have at least two vertices.
    """
    b_side = [v for v in range(g.n) if v not in set(a_side)]
    amask = sum(1 << v for v in a_side)
    bmask = sum(1 << v for v in b_side)
    a_front = [v for v in a_side if g.adj[v] & bmask]
    b_front = [v for v in b_side if g.adj[v] & amask]
    if len(a_side) < 2 or len(b_side) < 2 or not a_front:
        raise NotDecomposable("sides too small or not connected")
    fa = sum(1 << v for v in a_front)
    fb = sum(1 << v for v in b_front)
    if any(g.adj[v] & bmask != fb for v in a_front) or any(g.adj[v] & amask != fa for v in b_front):
        raise NotDecomposable("bipartition is not a split")
    g1, m1, map1 = _factor(g, a_side, fa)
    g2, m2, map2 = _factor(g, b_side, fb)
    return Decomposition(g1, m1, map1, g2, m2, map2)


def recompose(d: Decomposition) -> Graph:
    g, _, _ = split_composition(d.g1, d.marker1, d.g2, d.marker2)
    return g


def reduce_co4tent_prime(g: Graph, sp: SplitPartition, kclasses: dict[int, tuple[int, ...]]) -> Decomposition:
    """Factor off K5 with the stable vertices seeing only K5 (when K4 is empty), or K1 likewise (when K2 is empty).

    ``kclasses`` is the co-4-tent K-partition.  The second factor holds the
    removed vertices plus a marker standing for the rest of the clique.
    """
    if len(kclasses) != 8:
        raise WrongCase("prime reduction applies to the co-4-tent case")
    for empty, i in ((4, 5), (2, 1)):
        if kclasses[empty] or not kclasses[i]:
            continue
        ki = sum(1 << v for v in kclasses[i])
        sii = [s for s in sp.S if g.adj[s] and g.adj[s] & ~ki == 0]
        b_side = sii + list(kclasses[i])
        a_side = [v for v in range(g.n) if v not in set(b_side)]
        try:
            return decompose_on_split(g, a_side)
        except NotDecomposable:
            continue
    raise NotDecomposable("no prime reduction applies")


def net_classes(g: Graph, sp: SplitPartition, emb: dict[str, int]) -> dict[int, tuple[int, ...]]:
    """K1..K7 around a net; a clique vertex seeing all three leaves raises ForbiddenFound."""
    leaves = {1: emb["s1"], 3: emb["s3"], 5: emb["s5"]}
    table = {(1,): 1, (3,): 3, (5,): 5, (1, 3): 2, (3, 5): 4, (1, 5): 6, (): 7}
    classes: dict[int, list[int]] = {i: [] for i in range(1, 8)}
    for v in sp.K:
        seen = tuple(i for i in (1, 3, 5) if g.has_edge(v, leaves[i]))
        if seen not in table:
            raise ForbiddenFound(f"clique vertex {v} sees all three net leaves")
        classes[table[seen]].append(v)
    return {i: tuple(vs) for i, vs in classes.items()}


def dispatch_net(g: Graph, sp: SplitPartition, emb: dict[str, int] | None = None):
    """Net case: return ("FourTent", embedding) or ("Decompose", Decomposition).

    With at most one of K2, K4, K6 nonempty, some leaf class K_i has both
    neighbouring even classes empty; K_i together with the stable vertices
    seeing only K_i is split off.
    """
    if emb is None:
        for kind in ("Tent", "FourTent", "CoFourTent"):
            if find_anchor(g, sp, kind) is not None:
                raise WrongCase(f"graph contains a {kind}")
        emb = find_anchor(g, sp, "Net")
        if emb is None:
            raise WrongCase("graph contains no net")
    classes = net_classes(g, sp, emb)
    nonempty = [i for i in (2, 4, 6) if classes[i]]
    if len(nonempty) >= 2:
        emb4 = find_anchor(g, sp, "FourTent")
        if emb4 is None:
            raise InternalInconsistency("two of K2, K4, K6 nonempty but no 4-tent")
        return "FourTent", emb4
    for leaf in (1, 3, 5):
        if classes[leaf % 6 + 1] or classes[(leaf - 2) % 6 + 1]:
            continue
        kl = sum(1 << v for v in classes[leaf])
        private = [s for s in sp.S if g.adj[s] and g.adj[s] & ~kl == 0]
        b_side = private + list(classes[leaf])
        a_side = [v for v in range(g.n) if v not in set(b_side)]
        try:
            return "Decompose", decompose_on_split(g, a_side)
        except NotDecomposable:
            continue
    raise NotDecomposable("no leaf class splits off")
