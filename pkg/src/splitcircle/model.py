"""Chord models for split graphs.

In a chord model of a split graph the clique chords pairwise cross, so their
endpoints read ``pi pi`` around the circle for some ordering ``pi`` of K.
Each stable vertex then needs one chord whose endpoints sit in two of the
``2|K|`` gaps of that word and which crosses exactly its neighbours; stable
chords must not cross each other.  Once ``pi`` is fixed, every partial
neighbourhood allows exactly two placements and the non-crossing
requirement is a 2-SAT instance.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

from .chord import ChordModel, interlacement
from .errors import InternalInconsistency
from .graph import Graph, bits
from .matrix import EnrichedMatrix, lr_orderings
from .split import Decomposition, SplitPartition


def cyclic_interval(nb: Sequence[int], pos: dict[int, int], k: int) -> tuple[int, int] | None:
    """``(start, length)`` when the positions of ``nb`` are cyclically consecutive."""
    ps = {pos[v] for v in nb}
    for a in ps:
        if (a - 1) % k not in ps:
            if all((a + t) % k in ps for t in range(len(ps))):
                return a, len(ps)
            return None
    return None


def _cross(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    p1, q1 = c1
    p2, q2 = c2
    return p1 < p2 < q1 < q2 or p2 < p1 < q2 < q1


def two_sat(nvars: int, clauses: Iterable[tuple[int, int]]) -> list[bool] | None:
    """Literals are ``2*v`` (true) and ``2*v+1`` (false); clauses are disjunctions of two."""
    nlit = 2 * nvars
    graph: list[list[int]] = [[] for _ in range(nlit)]
    for a, b in clauses:
        graph[a ^ 1].append(b)
        graph[b ^ 1].append(a)
    # iterative Tarjan
    index = [-1] * nlit
    low = [0] * nlit
    on = [False] * nlit
    comp = [-1] * nlit
    stack: list[int] = []
    counter = ncomp = 0
    for root in range(nlit):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, it = work.pop()
            if it == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            if it < len(graph[v]):
                work.append((v, it + 1))
                w = graph[v][it]
                if index[w] == -1:
                    work.append((w, 0))
                elif on[w]:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    out = []
    for v in range(nvars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        # Tarjan numbers components in reverse topological order
        out.append(comp[2 * v] < comp[2 * v + 1])
    return out


def place_chords(g: Graph, sp: SplitPartition, pi: Sequence[int]) -> dict[int, tuple[int, int]] | None:
    """Gap pairs for the stable chords given the clique order ``pi``, or None.

    Gap ``x`` lies just before letter ``x`` of ``pi pi``.  Vertices with no
    clique neighbour get no entry.
    """
    k = len(pi)
    pos = {v: i for i, v in enumerate(pi)}
    full, var, opts = [], [], []
    for s in sp.S:
        nb = bits(g.adj[s])
        if not nb:
            continue
        if len(nb) == k:
            full.append(s)
            continue
        iv = cyclic_interval(nb, pos, k)
        if iv is None:
            return None
        a, length = iv
        pair = []
        for c in (0, 1):
            p, q = (a + c * k) % (2 * k), (a + length + c * k) % (2 * k)
            pair.append((min(p, q), max(p, q)))
        var.append(s)
        opts.append(pair)
    cuts = range(k) if full else [None]
    for r in cuts:
        clauses = []
        for x in range(len(var)):
            for c in (0, 1):
                if r is not None and _cross(opts[x][c], (r, r + k)):
                    lit = 2 * x + c
                    clauses.append((lit ^ 1, lit ^ 1))
            for y in range(x):
                for c in (0, 1):
                    for d in (0, 1):
                        if _cross(opts[x][c], opts[y][d]):
                            clauses.append(((2 * x + c) ^ 1, (2 * y + d) ^ 1))
        sol = two_sat(len(var), clauses)
        if sol is None:
            continue
        # literal 2x (true) selects placement 0
        chords = {s: opts[x][0 if sol[x] else 1] for x, s in enumerate(var)}
        for s in full:
            chords[s] = (r, r + k)
        return chords
    return None


def assemble_word(g: Graph, sp: SplitPartition, pi: Sequence[int], chords: dict[int, tuple[int, int]]) -> ChordModel:
    k = len(pi)
    word: list[int] = []
    arcs: list[str] = []
    closing: dict[int, list[tuple[int, int]]] = {}
    opening: dict[int, list[tuple[int, int]]] = {}
    for s, (p, q) in chords.items():
        opening.setdefault(p, []).append((q, s))
        closing.setdefault(q, []).append((p, s))
    for x in range(2 * k + 1):
        tag = "gap"
        for p, s in sorted(closing.get(x, []), key=lambda t: (-t[0], -t[1])):
            word.append(s)
            arcs.append(tag)
        for q, s in sorted(opening.get(x, []), key=lambda t: (-t[0], t[1])):
            word.append(s)
            arcs.append(tag)
        if x < 2 * k:
            word.append(pi[x % k])
            arcs.append("K+" if x < k else "K-")
    for s in sp.S:
        if s not in chords:
            word += [s, s]
            arcs += ["gap", "gap"]
    return ChordModel(tuple(word), tuple(arcs))


def model_for_order(g: Graph, sp: SplitPartition, pi: Sequence[int]) -> ChordModel | None:
    chords = place_chords(g, sp, pi)
    if chords is None:
        return None
    return assemble_word(g, sp, pi, chords)


def circular_orders(g: Graph, sp: SplitPartition) -> Iterable[tuple[int, ...]]:
    """Clique orders making every stable neighbourhood a cyclic interval.

    Rows containing the first clique vertex are complemented, which turns the
    circular-ones property into the ordinary one; LR-orderings of an all-U
    matrix are exactly its consecutive-ones orderings.
    """
    K = list(sp.K)
    if len(K) <= 2:
        yield from itertools.permutations(K)
        return
    idx = {v: c for c, v in enumerate(K)}
    full = (1 << len(K)) - 1
    rows = []
    for s in sp.S:
        r = sum(1 << idx[v] for v in bits(g.adj[s] & sp.kmask))
        if r and r != full:
            rows.append(r ^ full if r & 1 else r)
    rows = sorted(set(rows))
    a = EnrichedMatrix(len(K), rows, ["U"] * len(rows), [None] * len(rows))
    for order in lr_orderings(a, dedupe=True):
        yield tuple(K[c] for c in order)


def find_model(g: Graph, sp: SplitPartition, candidates: Iterable[Sequence[int]] = ()) -> ChordModel | None:
    """Try the given clique orders first, then every circular-ones order."""
    for pi in itertools.chain(candidates, circular_orders(g, sp)):
        m = model_for_order(g, sp, pi)
        if m is not None:
            return m
    return None


def compose_models(d: Decomposition, m1: ChordModel, m2: ChordModel) -> ChordModel:
    """Model of the split composition: ``u X u Y`` and ``w Z w W`` give ``X Z Y W``."""

    def halves(word, marker, mapping):
        i = word.index(marker)
        rot = word[i:] + word[:i]
        j = rot.index(marker, 1)
        x = [mapping[v] for v in rot[1:j]]
        y = [mapping[v] for v in rot[j + 1:]]
        return x, y

    x, y = halves(list(m1.word), d.marker1, d.map1)
    z, w = halves(list(m2.word), d.marker2, d.map2)
    return ChordModel(tuple(x + z + y + w))


def annotate_classes(m: ChordModel, class_of: dict[int, int], classes: Sequence[int] = ()) -> ChordModel:
    """Rename clique arcs after the class of their vertex (``K3+``, ``K3-``).

    Stable endpoints take the arc of the closest clique endpoint before them.
    The full circular list of arcs is attached only when every class occupies
    one contiguous run on each side.
    """
    if m.arcs is None or not class_of:
        return m
    labels = []
    for v, a in zip(m.word, m.arcs):
        labels.append(f"K{class_of[v]}{a[1]}" if a in ("K+", "K-") and v in class_of else None)
    known = [x for x in labels if x is not None]
    if not known:
        return m
    cur = known[-1]
    arcs = []
    for x in labels:
        cur = x if x is not None else cur
        arcs.append(cur)
    classes = sorted(set(classes) | set(class_of.values()))
    segments = [f"K{i}+" for i in classes] + [f"K{i}-" for i in classes]
    runs = [x for i, x in enumerate(known) if x != known[i - 1]] or known[:1]
    present = [s for s in segments if s in runs]
    ok = len(runs) == len(set(runs)) and any(runs == present[t:] + present[:t] for t in range(len(present)))
    return ChordModel(m.word, tuple(arcs), tuple(segments) if ok else None)


def check_model(g: Graph, m: ChordModel) -> None:
    if interlacement(m) != g:
        raise InternalInconsistency("model interlacement differs from the graph")
