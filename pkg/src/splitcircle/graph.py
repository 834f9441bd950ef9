"""Immutable simple graphs stored as per-vertex neighbour bitsets."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import FactorTooSmall, InvalidVertex, NotAnEdge, ParseError


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``.

    ``adj[u]`` is an int whose bit ``v`` is set iff ``uv`` is an edge.
    Instances are never mutated after construction.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise ValueError("adjacency length does not match n")
        full = (1 << n) - 1
        for u, a in enumerate(adj):
            if a & ~full or (a >> u) & 1:
                raise ValueError(f"bad adjacency row for vertex {u}")
        for u in range(n):
            for v in bits(adj[u]):
                if not (adj[v] >> u) & 1:
                    raise ValueError("adjacency is not symmetric")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidVertex(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int = 0) -> Graph:
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << u) for u in range(n)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, u: int) -> list[int]:
        return bits(self.adj[u])

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        """Edges in canonical order: lexicographic with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def check_vertex(self, u: int) -> None:
        if not isinstance(u, int) or not 0 <= u < self.n:
            raise InvalidVertex(f"vertex {u!r} not in [0, {self.n})")


def induced_subgraph(g: Graph, vs: Sequence[int]) -> Graph:
    """Subgraph induced by ``vs``; vertex ``i`` of the result is ``vs[i]``."""
    seen = set()
    for v in vs:
        g.check_vertex(v)
        if v in seen:
            raise InvalidVertex(f"duplicate vertex {v}")
        seen.add(v)
    adj = []
    for v in vs:
        row = 0
        a = g.adj[v]
        for j, w in enumerate(vs):
            if (a >> w) & 1:
                row |= 1 << j
        adj.append(row)
    return Graph(len(vs), adj)


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [full & ~a & ~(1 << u) for u, a in enumerate(g.adj)])


def local_complement(g: Graph, u: int) -> Graph:
    """Toggle every edge with both ends in N(u)."""
    g.check_vertex(u)
    nu = g.adj[u]
    adj = list(g.adj)
    for v in bits(nu):
        adj[v] ^= nu & ~(1 << v)
    return Graph(g.n, adj)


def pivot(g: Graph, u: int, v: int) -> Graph:
    """G x uv = G * u * v * u."""
    g.check_vertex(u)
    g.check_vertex(v)
    if not g.has_edge(u, v):
        raise NotAnEdge(f"{u}{v} is not an edge")
    return local_complement(local_complement(local_complement(g, u), v), u)


def split_composition(g1: Graph, v1: int, g2: Graph, v2: int) -> tuple[Graph, list[int], list[int]]:
    """Compose ``g1`` and ``g2`` at the markers ``v1`` and ``v2``.

    Returns the composed graph and two maps from old ids (``g1``, ``g2``) to new
    ids, with ``-1`` for the marker.  Vertices of ``g1`` come first.
    """
    if g1.n < 3 or g2.n < 3:
        raise FactorTooSmall("both factors need at least 3 vertices")
    g1.check_vertex(v1)
    g2.check_vertex(v2)
    map1, map2 = [-1] * g1.n, [-1] * g2.n
    nxt = 0
    for u in range(g1.n):
        if u != v1:
            map1[u] = nxt
            nxt += 1
    for u in range(g2.n):
        if u != v2:
            map2[u] = nxt
            nxt += 1
    edges = [(map1[a], map1[b]) for a, b in g1.edges() if v1 not in (a, b)]
    edges += [(map2[a], map2[b]) for a, b in g2.edges() if v2 not in (a, b)]
    edges += [(map1[a], map2[b]) for a in g1.neighbors(v1) for b in g2.neighbors(v2)]
    return Graph.from_edges(nxt, edges), map1, map2


def _search_order(pattern: Graph) -> list[int]:
    """Pattern vertices ordered so that each one sees many earlier ones."""
    n = pattern.n
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        best = max(remaining, key=lambda v: (popcount(pattern.adj[v] & placed), pattern.degree(v), -v))
        order.append(best)
        placed |= 1 << best
        remaining.remove(best)
    return order


def find_induced(
    g: Graph,
    pattern: Graph,
    allowed: Sequence[int] | None = None,
    order: Sequence[int] | None = None,
) -> dict[int, int] | None:
    """Return an induced embedding ``pattern -> g`` or ``None``.

    ``allowed[p]`` optionally restricts the images of pattern vertex ``p`` to a
    bitmask of host vertices.  With ``order`` given, pattern vertices are
    assigned in that order with host candidates tried in increasing id order,
    so the result is the lexicographically least embedding in that order.
    """
    k = pattern.n
    if k > g.n:
        return None
    if k == 0:
        return {}
    full = (1 << g.n) - 1
    if order is None:
        order = _search_order(pattern)
    pdeg = [pattern.degree(p) for p in range(k)]
    cand = []
    for p in range(k):
        mask = full if allowed is None else allowed[p] & full
        ok = 0
        for h in bits(mask):
            if g.degree(h) >= pdeg[p] and g.n - 1 - g.degree(h) >= k - 1 - pdeg[p]:
                ok |= 1 << h
        if not ok:
            return None
        cand.append(ok)
    image = [-1] * k
    used = 0

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == k:
            return True
        p = order[depth]
        mask = cand[p] & ~used
        for q in order[:depth]:
            h = image[q]
            if pattern.has_edge(p, q):
                mask &= g.adj[h]
            else:
                mask &= ~g.adj[h]
            if not mask:
                return False
        for h in bits(mask):
            image[p] = h
            used |= 1 << h
            if extend(depth + 1):
                return True
            used &= ~(1 << h)
        image[p] = -1
        return False

    if extend(0):
        return {p: image[p] for p in range(k)}
    return None


def is_embedding(g: Graph, pattern: Graph, emb: dict[int, int]) -> bool:
    """Check that ``emb`` is an injective induced embedding."""
    if set(emb) != set(range(pattern.n)):
        return False
    imgs = list(emb.values())
    if len(set(imgs)) != len(imgs) or any(not 0 <= h < g.n for h in imgs):
        return False
    for p in range(pattern.n):
        for q in range(p + 1, pattern.n):
            if pattern.has_edge(p, q) != g.has_edge(emb[p], emb[q]):
                return False
    return True


def degree_signature(g: Graph) -> tuple:
    return tuple(sorted((g.degree(u), tuple(sorted(g.degree(v) for v in g.neighbors(u)))) for u in range(g.n)))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if degree_signature(g1) != degree_signature(g2):
        return False
    return find_induced(g2, g1) is not None


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format; ``#`` lines are comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    try:
        n, m = (int(x) for x in lines[0].split())
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"malformed graph file: {exc}") from None
    if len(edges) != m or any(len(e) != 2 for e in edges):
        raise ParseError(f"expected {m} edge lines of two ids")
    if n < 0:
        raise ParseError("negative vertex count")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    es = g.edges()
    return "".join([f"{g.n} {len(es)}\n"] + [f"{u} {v}\n" for u, v in es])
