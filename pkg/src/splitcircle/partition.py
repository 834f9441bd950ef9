"""K- and S-partitions around an anchor, the per-class enriched matrices and the colour-union matrices.

Every S-vertex touching the clique is assigned a class ``(i, j, var)``: its
neighbourhood starts in ``K_i``, runs through the classes strictly between
``i`` and ``j`` (cyclically) completely, and ends in ``K_j``.  ``var`` is ``""``
for ordinary classes and marks the few special classes:

* ``"LR"``  rows labelled LR (4-tent ``S[16``, co-4-tent ``S76]``),
* ``"LR0"`` empty LR-rows (4-tent ``S[15]``, co-4-tent ``S[86]``),
* ``"["`` / ``"]"`` the two halves of the co-4-tent class ``S86``.

Colours are derived from one sign per row endpoint: ``+1`` (red) when the
endpoint lies in the first copy of the clique word, ``-1`` (blue) otherwise.
A class not wrapping past the last clique class has equal signs at both
ends; a wrapping class has opposite signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ForbiddenFound, WrongCase
from .graph import Graph, bits
from .matrix import EnrichedMatrix, TwoNestedCertificate, is_2nested, is_nested
from .split import SplitPartition

NCLASSES = {"Tent": 6, "FourTent": 6, "CoFourTent": 8}
PREFIX = {"Tent": "A", "FourTent": "B", "CoFourTent": "C"}

# anchor S-vertices seen by a clique vertex -> its class
K_CLASSES = {
    "Tent": {
        frozenset({"s13", "s51"}): 1, frozenset({"s13"}): 2, frozenset({"s13", "s35"}): 3,
        frozenset({"s35"}): 4, frozenset({"s35", "s51"}): 5, frozenset({"s51"}): 6,
    },
    "FourTent": {
        frozenset({"s12"}): 1, frozenset({"s12", "s24"}): 2, frozenset({"s24"}): 3,
        frozenset({"s24", "s45"}): 4, frozenset({"s45"}): 5, frozenset(): 6,
    },
    "CoFourTent": {
        frozenset({"s1", "s13"}): 1, frozenset({"s1", "s13", "s35"}): 2, frozenset({"s13", "s35"}): 3,
        frozenset({"s5", "s13", "s35"}): 4, frozenset({"s5", "s35"}): 5, frozenset({"s35"}): 6,
        frozenset(): 7, frozenset({"s13"}): 8,
    },
}
ANCHOR_S = {"Tent": ("s13", "s35", "s51"), "FourTent": ("s12", "s24", "s45"), "CoFourTent": ("s1", "s13", "s35", "s5")}

# cells of S that may be nonempty
ALLOWED = {
    "Tent": {1: {1, 2, 3, 4}, 2: {2, 3, 5, 6}, 3: {3, 4, 5, 6}, 4: {1, 2, 4, 5}, 5: {1, 2, 5, 6}, 6: {1, 3, 4, 6}},
    "FourTent": {1: {1, 2, 3, 4, 5, 6}, 2: {2, 3, 4, 5, 6}, 3: {3, 4, 5, 6}, 4: {4, 5, 6}, 5: {5, 6}, 6: {1, 2, 3, 4, 5, 6}},
    "CoFourTent": {1: {1, 2, 3, 4, 6, 7}, 2: {2, 3, 5, 6, 7}, 3: {3, 4, 5, 6}, 4: {4, 5, 6}, 5: {5}, 6: {6},
                   7: {4, 5, 6, 7}, 8: {2, 3, 4, 5, 6, 7, 8}},
}

# classes complete to the clique class at the given endpoint
COMPLETE = {
    "Tent": {(1, 4, 1), (4, 1, 1), (3, 6, 3), (6, 3, 3), (5, 2, 5), (2, 5, 5)},
    "FourTent": {(1, 3, 1), (1, 4, 4), (2, 5, 2), (2, 6, 2), (3, 5, 5), (4, 6, 4), (6, 2, 2), (6, 4, 4), (6, 3, 3)},
    "CoFourTent": {(1, 3, 1), (1, 4, 1), (1, 6, 6), (2, 5, 5), (2, 7, 2), (3, 5, 5), (4, 6, 4), (8, 2, 2),
                   (8, 5, 8), (7, 4, 4)},
}
# rows left out of the matrix of the endpoint they are complete to
EXCLUDED = {"Tent": set(), "FourTent": COMPLETE["FourTent"], "CoFourTent": COMPLETE["CoFourTent"]}


def _tent_sign(i: int, j: int) -> int:
    if i % 2:
        return {1: -1, 3: 1, 5: -1}[i]
    near = (j - i) % 6 in (1, 5)
    base = {2: -1, 4: 1, 6: -1}[i]
    return base if near else -base


# sign at the left endpoint of each class
SIGNS = {
    "FourTent": {
        (1, 2): 1, (1, 3): 1, (1, 4): -1, (1, 5): -1, (1, 6): -1, (2, 3): -1, (2, 4): -1, (2, 5): -1,
        (2, 6): -1, (3, 4): -1, (3, 5): 1, (3, 6): 1, (4, 5): 1, (4, 6): 1, (5, 6): -1, (6, 1): 1,
        (6, 2): -1, (6, 3): -1, (6, 4): 1, (6, 5): 1,
    },
    "CoFourTent": {
        (1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 6): -1, (1, 7): -1, (2, 3): -1, (2, 5): -1, (2, 6): -1,
        (2, 7): -1, (3, 4): 1, (3, 5): -1, (3, 6): -1, (4, 5): -1, (4, 6): -1, (7, 4): -1, (7, 5): -1,
        (7, 6): -1, (8, 2): -1, (8, 3): -1, (8, 4): -1, (8, 5): -1, (8, 7): 1,
    },
}


@dataclass(frozen=True)
class Partition:
    kind: str
    K: dict[int, tuple[int, ...]]
    S: dict[int, tuple[int, int, str]]
    isolated: tuple[int, ...] = ()

    @property
    def nclasses(self) -> int:
        return NCLASSES[self.kind]

    def class_mask(self, i: int) -> int:
        return sum(1 << v for v in self.K.get(i, ()))


def class_name(tag: tuple[int, int, str]) -> str:
    i, j, var = tag
    if var == "LR":
        return "S76]" if (i, j) == (7, 6) else "S[16"
    if var == "LR0":
        return "S[86]" if (i, j) == (8, 6) else "S[15]"
    if var == "[":
        return f"S[{i}{j}"
    if var == "]":
        return f"S{i}{j}]"
    return f"S{i}{j}"


# ---------------------------------------------------------------- K partition


def partition_K(g: Graph, sp: SplitPartition, kind: str, emb: dict[str, int]) -> dict[int, tuple[int, ...]]:
    if kind not in K_CLASSES:
        raise WrongCase(f"no K-partition for case {kind}")
    table = K_CLASSES[kind]
    classes: dict[int, list[int]] = {i: [] for i in range(1, NCLASSES[kind] + 1)}
    for v in sp.K:
        seen = frozenset(nm for nm in ANCHOR_S[kind] if g.has_edge(v, emb[nm]))
        if seen not in table:
            raise ForbiddenFound(f"clique vertex {v} sees anchor vertices {sorted(seen)}")
        classes[table[seen]].append(v)
    return {i: tuple(vs) for i, vs in classes.items()}


# ---------------------------------------------------------------- S partition


def _cyc(i: int, j: int, n: int) -> list[int]:
    """Classes from i to j inclusive going forward cyclically."""
    out = [i]
    while out[-1] != j:
        out.append(out[-1] % n + 1)
    return out


def _status(g: Graph, v: int, kclasses: dict[int, tuple[int, ...]]) -> dict[int, int | None]:
    """None for an empty class, else 0 untouched, 1 partial, 2 complete."""
    st = {}
    for i, ks in kclasses.items():
        if not ks:
            st[i] = None
            continue
        hit = sum(1 for k in ks if g.has_edge(v, k))
        st[i] = 0 if hit == 0 else (2 if hit == len(ks) else 1)
    return st


def _representations(st: dict[int, int | None], n: int) -> list[tuple[int, int]]:
    """All (i, j) whose cyclic interval fits the vertex; empty classes may serve as ends."""
    reps = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            span = _cyc(i, j, n)
            inside = set(span)
            ok = True
            for c in range(1, n + 1):
                s = st[c]
                if s is None:
                    continue
                if c not in inside:
                    ok = ok and s == 0
                elif c in (i, j):
                    ok = ok and s >= 1
                else:
                    ok = ok and s == 2
            if ok:
                reps.append((i, j))
    # prefer ends in nonempty classes, then shorter spans
    reps.sort(key=lambda ij: ((st[ij[0]] is None) + (st[ij[1]] is None), len(_cyc(*ij, n)), ij))
    return reps


def _complete_to(st, classes) -> bool:
    return all(st[c] in (None, 2) for c in classes)


def _touches(st, c) -> bool:
    return bool(st[c])


def classify_s(kind: str, st: dict[int, int | None]) -> tuple[int, int, str]:
    n = NCLASSES[kind]
    if kind == "FourTent" and _complete_to(st, range(1, 6)):
        return (1, 6, "LR") if _touches(st, 6) else (1, 5, "LR0")
    if kind == "CoFourTent" and _complete_to(st, (1, 2, 3, 4, 5, 6, 8)):
        return (7, 6, "LR") if _touches(st, 7) else (8, 6, "LR0")
    reps = _representations(st, n)
    if not reps:
        raise ForbiddenFound("neighbourhood is not an interval of clique classes")
    allowed = ALLOWED[kind]
    for i, j in reps:
        if j not in allowed[i]:
            continue
        if kind == "CoFourTent" and (i, j) == (8, 6):
            if st[8] == 2:
                return (8, 6, "[")
            if st[6] == 2:
                return (8, 6, "]")
            continue
        return (i, j, "")
    raise ForbiddenFound(f"no permitted class among {reps}")


def partition_S(g: Graph, sp: SplitPartition, kind: str, kclasses: dict[int, tuple[int, ...]]):
    S, isolated = {}, []
    for v in sp.S:
        if g.adj[v] & sp.kmask == 0:
            isolated.append(v)
            continue
        st = _status(g, v, kclasses)
        tag = classify_s(kind, st)
        i, j, var = tag
        for e in (i, j):
            if (i, j, e) in COMPLETE[kind] and var in ("", "[", "]") and st[e] not in (None, 2):
                raise ForbiddenFound(f"vertex {v} in {class_name(tag)} is not complete to K{e}")
        S[v] = tag
    return S, tuple(isolated)


def partition(g: Graph, sp: SplitPartition, kind: str, emb: dict[str, int]) -> Partition:
    K = partition_K(g, sp, kind, emb)
    S, isolated = partition_S(g, sp, kind, K)
    return Partition(kind, K, S, isolated)


# ---------------------------------------------------------------- matrices


def endpoint_signs(kind: str, tag: tuple[int, int, str]) -> tuple[int, int]:
    i, j, var = tag
    if kind == "Tent":
        left = _tent_sign(i, j)
    elif (i, j) == (8, 6):
        left = -1 if var == "[" else 1
    else:
        left = SIGNS[kind][(i, j)]
    return left, (left if i < j else -left)


def _color(sign: int) -> str:
    return "red" if sign > 0 else "blue"


@dataclass
class CaseMatrices:
    kind: str
    classes: dict[int, EnrichedMatrix]
    class_rows: dict[int, tuple[int, ...]]
    unions: dict[str, tuple[int, int, tuple[int, ...]]]  # name -> (width, rows, vertices)
    columns: dict[int, tuple[int, ...]] = field(default_factory=dict)  # clique vertices of each class matrix
    certificates: dict[int, TwoNestedCertificate] = field(default_factory=dict)

    def name(self, i: int) -> str:
        return f"{PREFIX[self.kind]}{i}"


def color_empty_lr_rows(a: EnrichedMatrix) -> EnrichedMatrix:
    """Fix the shared colour of the empty LR-rows from the labelled rows.

    Blue when some L-row is red or some R-row is blue, red in the mirrored
    situation; both at once is a forbidden configuration.
    """
    empties = [r for r, (row, lab) in enumerate(zip(a.rows, a.labels)) if lab == "LR" and row == 0]
    if not empties:
        return a
    to_blue = any((lab, col) in (("L", "red"), ("R", "blue")) for lab, col in zip(a.labels, a.colors))
    to_red = any((lab, col) in (("L", "blue"), ("R", "red")) for lab, col in zip(a.labels, a.colors))
    if to_blue and to_red:
        raise ForbiddenFound("empty LR-rows cannot be colored")
    if not (to_blue or to_red):
        return a
    col = "blue" if to_blue else "red"
    colors = list(a.colors)
    for r in empties:
        colors[r] = col
    return EnrichedMatrix(a.m, a.rows, a.labels, tuple(colors), a.names)


def build_case_matrices(g: Graph, part: Partition) -> CaseMatrices:
    kind, n = part.kind, part.nclasses
    specs: dict[int, list] = {i: [] for i in range(1, n + 1)}
    for v, tag in sorted(part.S.items(), key=lambda kv: (kv[1], kv[0])):
        i, j, var = tag
        if var in ("LR", "LR0"):
            home = 6 if kind == "FourTent" else 7
            specs[home].append((v, "LR", None))
            continue
        if i == j:
            specs[i].append((v, "U", None))
            continue
        ls, rs = endpoint_signs(kind, tag)
        if (i, j, i) not in EXCLUDED[kind]:
            specs[i].append((v, "R", _color(ls)))
        if (i, j, j) not in EXCLUDED[kind]:
            specs[j].append((v, "L", _color(rs)))
    classes, class_rows = {}, {}
    for i in range(1, n + 1):
        cols = part.K[i]
        rows, labels, colors, names = [], [], [], []
        for v, lab, col in specs[i]:
            rows.append(sum(1 << c for c, k in enumerate(cols) if g.has_edge(v, k)))
            labels.append(lab)
            colors.append(col)
            names.append(class_name(part.S[v]))
        a = EnrichedMatrix(len(cols), rows, labels, colors, tuple(names))
        classes[i] = color_empty_lr_rows(a)
        class_rows[i] = tuple(v for v, _, _ in specs[i])
    return CaseMatrices(kind, classes, class_rows, _union_matrices(g, part), dict(part.K))


def _union_matrices(g: Graph, part: Partition) -> dict[str, tuple[int, tuple[int, ...], tuple[int, ...]]]:
    kind, n = part.kind, part.nclasses
    order = [k for i in range(1, n + 1) for k in part.K[i]]
    pos = {k: c for c, k in enumerate(order)}
    width = len(order) + 2
    c_l, c_r = 1 << len(order), 1 << (len(order) + 1)

    def row(v: int, classes) -> int:
        return sum(1 << pos[k] for c in classes for k in part.K[c] if g.has_edge(v, k))

    out: dict[str, list[tuple[int, int]]] = {"r": [], "b": [], "r-b": [], "b-r": []}
    for v, tag in sorted(part.S.items()):
        i, j, var = tag
        if var in ("LR", "LR0") or i == j:
            continue
        ls, _ = endpoint_signs(kind, tag)
        if i < j:
            out["r" if ls > 0 else "b"].append((v, row(v, range(1, n + 1))))
        else:
            head, tail = row(v, range(i, n + 1)) | c_r, row(v, range(1, j + 1)) | c_l
            out["r" if ls > 0 else "b"].append((v, head))
            out["b" if ls > 0 else "r"].append((v, tail))
            out["r-b" if ls > 0 else "b-r"].append((v, row(v, range(1, n + 1))))
    p = PREFIX[kind]
    return {f"{p}_{key}": (width, tuple(r for _, r in rs), tuple(v for v, _ in rs)) for key, rs in out.items()}


@dataclass(frozen=True)
class MatrixResult:
    name: str
    kind: str  # "twoNested" or "nested"
    ok: bool
    reason: str | None = None


def case_verdict(cm: CaseMatrices) -> list[MatrixResult]:
    """Check every class matrix for 2-nestedness and every union matrix for nestedness.

    Fills ``cm.certificates``; the verdict is positive iff every result is ok.
    """
    results = []
    for i, a in cm.classes.items():
        cert, reason = is_2nested(a)
        if cert is not None:
            cm.certificates[i] = cert
        results.append(MatrixResult(cm.name(i), "twoNested", cert is not None, reason))
    for name, (_, rows, _) in cm.unions.items():
        ok, gem = is_nested(list(rows))
        results.append(MatrixResult(name, "nested", ok, None if ok else "0-gem"))
    return results
