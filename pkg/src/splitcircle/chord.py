"""Chord diagrams as double occurrence words, interlacement and exhaustive search."""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotDoubleOccurrence, ParseError, TooLarge
from .graph import Graph, bits, popcount

DEFAULT_CAP = 9


@dataclass(frozen=True)
class ChordModel:
    """A chord diagram: each vertex id occurs exactly twice in ``word``.

    ``arcs`` optionally names, per word position, the arc segment the endpoint
    lies in (for example ``"K3+"``).  ``segments`` lists every named arc in
    circular order, including arcs that hold no endpoint.
    """

    word: tuple[int, ...]
    arcs: tuple[str, ...] | None = field(default=None, compare=False)
    segments: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.arcs is not None:
            object.__setattr__(self, "arcs", tuple(self.arcs))
            if len(self.arcs) != len(self.word):
                raise NotDoubleOccurrence("arc annotation length differs from word length")
        if self.segments is not None:
            object.__setattr__(self, "segments", tuple(self.segments))
        check_word(self.word)

    @property
    def n(self) -> int:
        return len(self.word) // 2


def check_word(word: Sequence[int]) -> None:
    counts = Counter(word)
    if any(c != 2 for c in counts.values()):
        raise NotDoubleOccurrence("every vertex must occur exactly twice")
    n = len(word) // 2
    if set(counts) != set(range(n)):
        raise NotDoubleOccurrence(f"vertex ids must be exactly 0..{n - 1}")


def interlacement(model: ChordModel | Sequence[int]) -> Graph:
    """Vertices are adjacent iff their occurrences alternate in the word."""
    word = model.word if isinstance(model, ChordModel) else tuple(model)
    check_word(word)
    n = len(word) // 2
    adj = [0] * n
    first: dict[int, int] = {}
    for pos, v in enumerate(word):
        if v not in first:
            first[v] = pos
    # u ~ v iff exactly one occurrence of v lies strictly between the two of u
    for u in range(n):
        a = first[u]
        b = word.index(u, a + 1)
        inside = 0
        for v in word[a + 1:b]:
            inside ^= 1 << v
        adj[u] = inside
    return Graph(n, adj)


def parse_model(text: str) -> ChordModel:
    toks = text.split()
    try:
        word = [int(t) for t in toks]
    except ValueError:
        raise ParseError("model must be whitespace-separated integers") from None
    return ChordModel(tuple(word))


def format_model(model: ChordModel) -> str:
    return " ".join(str(v) for v in model.word) + "\n"


def rotate(word: Sequence[int], k: int) -> tuple[int, ...]:
    k %= max(len(word), 1)
    return tuple(word[k:]) + tuple(word[:k])


def _components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(bits(comp))
    return comps


def _connected_order(g: Graph, comp: list[int]) -> list[int]:
    order = []
    placed = 0
    rest = set(comp)
    while rest:
        v = max(rest, key=lambda x: (popcount(g.adj[x] & placed), g.degree(x), -x))
        order.append(v)
        placed |= 1 << v
        rest.remove(v)
    return order


def _search_component(g: Graph, order: list[int]) -> list[int] | None:
    """Insert chords one at a time, keeping every partial word exact."""
    word = [order[0], order[0]]

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        placed = 0
        for u in order[:i]:
            placed |= 1 << u
        want = g.adj[v] & placed
        L = len(word)
        prefix = [0] * (L + 1)
        for t, u in enumerate(word):
            prefix[t + 1] = prefix[t] ^ (1 << u)
        # gaps are positions 1..L; gap L sits between the last and first letter
        for p in range(1, L + 1):
            for q in range(p, L + 1):
                if prefix[q] ^ prefix[p] != want:
                    continue
                word.insert(q, v)
                word.insert(p, v)
                if extend(i + 1):
                    return True
                del word[p]
                del word[q]
        return False

    return list(word) if extend(1) else None


@lru_cache(maxsize=65536)
def _model_search_cached(g: Graph) -> tuple[int, ...] | None:
    word: list[int] = []
    for comp in _components(g):
        part = _search_component(g, _connected_order(g, comp))
        if part is None:
            return None
        word.extend(part)
    return tuple(word)


def oracle_model_search(g: Graph, cap: int = DEFAULT_CAP) -> ChordModel | None:
    """Exhaustive chord-model search; ``None`` means no model exists.

    Every prefix of the search realises the subgraph induced by the chords
    placed so far, and every gap pair is tried for each new chord, so the
    search visits every chord diagram up to rotation.
    """
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds the oracle cap {cap}")
    word = _model_search_cached(g)
    return None if word is None else ChordModel(word)


def all_words(n: int):
    """Every double occurrence word on ``0..n-1`` with vertex 0 first (tests only)."""
    if n == 0:
        yield ()
        return

    def rec(word: list[int], remaining: Counter):
        if not remaining:
            yield tuple(word)
            return
        for v in sorted(remaining):
            if remaining[v] == 2 and any(remaining[u] == 2 for u in range(v)):
                continue  # first occurrences in increasing vertex order
            word.append(v)
            remaining[v] -= 1
            if remaining[v] == 0:
                del remaining[v]
            yield from rec(word, remaining)
            remaining[v] += 1
            word.pop()

    yield from rec([], Counter({v: 2 for v in range(n)}))
