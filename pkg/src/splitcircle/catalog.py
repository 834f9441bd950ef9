"""Minimal non-circle split graphs, auxiliary non-circle graphs and witness search."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistency, InvalidParameter, NoScript
from .graph import Graph, find_induced, induced_subgraph, is_embedding, local_complement

FAMILIES = ("TentJoinK1", "OddSunCenter", "EvenSun", "MII", "MIII", "MIII3", "MIV", "MV", "F0", "F1", "F2")
PARAMETRIC = {"OddSunCenter", "EvenSun", "MII", "MIII", "F1", "F2"}
DEFAULT_KMAX = 16


@dataclass(frozen=True)
class FscMember:
    """A member of the forbidden family.

    Vertices ``0..|K|-1`` form the clique (in cyclic order where the family
    has one); the stable vertices follow, the center (if any) last.
    """

    family: str
    k: int | None
    graph: Graph
    K: tuple[int, ...]
    S: tuple[int, ...]

    @property
    def matrix(self) -> list[list[int]]:
        """A(S, K): one row per stable vertex, one column per clique vertex."""
        return [[int(self.graph.has_edge(s, c)) for c in self.K] for s in self.S]

    @property
    def label(self) -> str:
        return self.family if self.k is None or self.family not in PARAMETRIC else f"{self.family}({self.k})"


def _pair(i: int, j: int, m: int) -> list[int]:
    row = [0] * m
    row[i] = row[j] = 1
    return row


def fsc_matrix(family: str, k: int | None = None) -> list[list[int]]:
    """The A(S, K) matrix of a family member; raises InvalidParameter on bad k."""
    if family not in FAMILIES:
        raise InvalidParameter(f"unknown family {family!r}")
    if family in PARAMETRIC:
        if not isinstance(k, int) or isinstance(k, bool):
            raise InvalidParameter(f"{family} needs an integer parameter")
        if family == "OddSunCenter" and (k < 3 or k % 2 == 0):
            raise InvalidParameter("OddSunCenter needs odd k >= 3")
        if family in ("EvenSun", "MII", "MIII") and (k < 4 or k % 2):
            raise InvalidParameter(f"{family} needs even k >= 4")
        if family in ("F1", "F2") and (k < 5 or k % 2 == 0):
            raise InvalidParameter(f"{family} needs odd k >= 5")
    if family == "TentJoinK1":
        return [[1, 0, 1, 1], [1, 1, 1, 0], [0, 1, 1, 1]]
    if family == "OddSunCenter":
        return [_pair(i, (i + 1) % k, k) for i in range(k)] + [[1] * k]
    if family == "EvenSun":
        return [_pair(i, (i + 1) % k, k) for i in range(k)]
    if family == "MII":
        rows = [_pair(i, i + 1, k) for i in range(k - 2)]
        rows.append([1] * (k - 2) + [0, 1])
        rows.append([0] + [1] * (k - 1))
        return rows
    if family in ("MIII", "MIII3"):
        k = 3 if family == "MIII3" else k
        rows = [_pair(i, i + 1, k + 1) for i in range(k - 1)]
        rows.append([0] + [1] * (k - 2) + [0, 1])
        return rows
    if family == "MIV":
        return [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1], [0, 1, 0, 1, 0, 1]]
    if family == "MV":
        return [[1, 1, 0, 0, 0], [0, 0, 1, 1, 0], [1, 1, 1, 1, 0], [1, 0, 0, 1, 1]]
    if family == "F0":
        return [[1, 1, 1, 0, 0], [0, 1, 1, 1, 0], [0, 0, 1, 1, 1]]
    if family == "F1":
        m = k - 1
        rows = [[0] + [1] * (m - 1), [1] * (m - 1) + [0]]
        rows += [_pair(i, i + 1, m) for i in range(m - 2, -1, -1)][: k - 2]
        return rows
    # F2
    rows = [[0] + [1] * (k - 2) + [0]]
    rows += [_pair(i, i + 1, k) for i in range(k - 1)]
    return rows


def split_graph_from_matrix(mat: list[list[int]]) -> Graph:
    """Clique on the columns, one stable vertex per row adjacent to its ones."""
    m = len(mat[0]) if mat else 0
    n = m + len(mat)
    edges = [(a, b) for a in range(m) for b in range(a + 1, m)]
    edges += [(c, m + r) for r, row in enumerate(mat) for c in range(m) if row[c]]
    return Graph.from_edges(n, edges)


def make_fsc(family: str, k: int | None = None) -> FscMember:
    mat = fsc_matrix(family, k)
    g = split_graph_from_matrix(mat)
    m = len(mat[0])
    if family == "MIII3":
        k = 3
    elif family not in PARAMETRIC:
        k = None
    return FscMember(family, k, g, tuple(range(m)), tuple(range(m, g.n)))


def fsc_size(family: str, k: int | None = None) -> int:
    mat = fsc_matrix(family, k)
    return len(mat) + len(mat[0])


def fsc_members(max_vertices: int, kmax: int = DEFAULT_KMAX) -> list[FscMember]:
    """All members with at most ``max_vertices`` vertices, smallest first."""
    out = []
    for fam in FAMILIES:
        if fam in PARAMETRIC:
            for k in range(3, kmax + 1):
                try:
                    size = fsc_size(fam, k)
                except InvalidParameter:
                    continue
                if size <= max_vertices:
                    out.append(make_fsc(fam, k))
        elif fsc_size(fam) <= max_vertices:
            out.append(make_fsc(fam))
    out.sort(key=lambda mb: (mb.graph.n, FAMILIES.index(mb.family), mb.k or 0))
    return out


# ---------------------------------------------------------------- auxiliary graphs


def wheel(k: int) -> Graph:
    """Hub 0 joined to the cycle 1..k."""
    edges = [(0, i) for i in range(1, k + 1)] + [(i, i % k + 1) for i in range(1, k + 1)]
    return Graph.from_edges(k + 1, edges)


def bw3() -> Graph:
    """The 3-wheel with each rim edge subdivided once."""
    # hub 0, rim 1,2,3, subdivision vertices 4,5,6 on rim edges 12, 23, 31
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1)]
    return Graph.from_edges(7, edges)


def c6_complement() -> Graph:
    edges = [(a, b) for a in range(6) for b in range(a + 1, 6) if (b - a) % 6 not in (1, 5)]
    return Graph.from_edges(6, edges)


TARGETS = {"W5": lambda: wheel(5), "W7": lambda: wheel(7), "BW3": bw3, "C6bar": c6_complement}


# ---------------------------------------------------------------- reduction scripts


@dataclass(frozen=True)
class ReductionScript:
    sequence: tuple[int, ...]
    target: str


def _sun_names(member: FscMember) -> tuple[list[int], list[int], int | None]:
    """Clique vertices v_1..v_k, petals w_1..w_k (w_i sees v_i, v_{i+1}) and the center."""
    k = member.k
    v = list(member.K)
    w = list(member.S[:k])
    center = member.S[k] if member.family == "OddSunCenter" else None
    return v, w, center


def reduction_script(member: FscMember) -> ReductionScript:
    """Local complementations turning a sun member into a graph containing a known non-circle target."""
    if member.family not in ("OddSunCenter", "EvenSun"):
        raise NoScript(f"no scripted reduction for {member.family}")
    v, w, x = _sun_names(member)
    k = member.k
    V = lambda i: v[i - 1]  # noqa: E731  1-based clique names
    W = lambda i: w[i - 1]  # noqa: E731
    if member.family == "OddSunCenter":
        if k == 3:
            return ReductionScript((x,), "BW3")
        # petals first leave a k-wheel with hub x and rim v_1..v_k
        seq = [x] + w
        rim = list(v)
        while len(rim) >= 8:
            seq += [rim[0], rim[1], rim[-1]]
            rim = rim[2:-1]
        if len(rim) == 6:
            return ReductionScript(tuple(seq + [rim[0], rim[3], x]), "C6bar")
        return ReductionScript(tuple(seq), f"W{len(rim)}")
    if k == 4:
        seq = [W(1), W(2), W(3), W(4), V(1), W(4), W(1), W(3), V(3), W(2), V(1)]
        return ReductionScript(tuple(seq), "C6bar")
    if k == 6:
        return ReductionScript(tuple(w), "C6bar")
    # the clique sequence only works after the petals have been processed
    j, l = k // 2, (k - 8) // 2
    seq = list(w) + [V(1), V(j + 1)]
    for t in range(l + 1):
        seq += [V(2 + t), V(k - t)]
    return ReductionScript(tuple(seq), "W5" if k % 4 == 2 else "W7")


def apply_script(member: FscMember, script: ReductionScript) -> Graph:
    g = member.graph
    for u in script.sequence:
        g = local_complement(g, u)
    return g


def script_reaches_target(member: FscMember, script: ReductionScript) -> bool:
    g = apply_script(member, script)
    return find_induced(g, TARGETS[script.target]()) is not None


# ---------------------------------------------------------------- witnesses


@dataclass(frozen=True)
class Witness:
    family: str
    k: int | None
    vertices: tuple[int, ...]  # host image of member vertex i at position i


def find_fsc_witness(g: Graph, kmax: int = DEFAULT_KMAX) -> Witness:
    """Smallest family member occurring as an induced subgraph of ``g``."""
    for member in fsc_members(g.n, kmax):
        emb = find_induced(g, member.graph)
        if emb is None:
            continue
        if not is_embedding(g, member.graph, emb):
            raise InternalInconsistency("embedding check failed")
        return Witness(member.family, member.k, tuple(emb[i] for i in range(member.graph.n)))
    raise InternalInconsistency("no forbidden subgraph found in a graph judged non-circle")


def witness_graph(g: Graph, w: Witness) -> Graph:
    return induced_subgraph(g, list(w.vertices))
