"""Enriched 0/1 matrices: nestedness, LR-orderings, blocks and 2-nestedness.

Rows are stored as column bitmasks.  Column ``c`` of a row is bit ``c``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .errors import ParseError
from .graph import bits, popcount

LABELS = ("U", "L", "R", "LR")
COLORS = (None, "red", "blue")


def flip(color: str | None) -> str | None:
    return {"red": "blue", "blue": "red"}.get(color, color)


@dataclass(frozen=True)
class EnrichedMatrix:
    m: int
    rows: tuple[int, ...]
    labels: tuple[str, ...]
    colors: tuple[str | None, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "colors", tuple(self.colors))
        if not len(self.rows) == len(self.labels) == len(self.colors):
            raise ValueError("rows, labels and colors differ in length")
        full = (1 << self.m) - 1
        empty_lr = set()
        for r, lab, col in zip(self.rows, self.labels, self.colors):
            if r & ~full:
                raise ValueError("row has bits beyond the column count")
            if lab not in LABELS or col not in COLORS:
                raise ValueError(f"bad label/color {lab!r}/{col!r}")
            if col is not None:
                if lab == "U" or (lab == "LR" and r):
                    raise ValueError("only L/R rows and empty LR rows may be colored")
                if lab == "LR":
                    empty_lr.add(col)
        if len(empty_lr) > 1:
            raise ValueError("all empty LR rows must share one color")

    @classmethod
    def from_rows(cls, spec: Sequence[tuple[str, str | None, str]]) -> EnrichedMatrix:
        """Build from ``(label, color, bitstring)`` triples; column 0 is leftmost."""
        m = len(spec[0][2]) if spec else 0
        rows, labels, colors = [], [], []
        for lab, col, s in spec:
            if len(s) != m:
                raise ValueError("ragged rows")
            rows.append(sum(1 << i for i, ch in enumerate(s) if ch == "1"))
            labels.append(lab)
            colors.append(col)
        return cls(m, rows, labels, colors)

    @property
    def n(self) -> int:
        return len(self.rows)

    def bitstring(self, i: int) -> str:
        return "".join("1" if (self.rows[i] >> c) & 1 else "0" for c in range(self.m))

    def dual(self) -> EnrichedMatrix:
        """Mirror the columns and swap L with R."""
        swap = {"L": "R", "R": "L"}
        rows = [reverse_bits(r, self.m) for r in self.rows]
        return EnrichedMatrix(self.m, rows, [swap.get(l, l) for l in self.labels], self.colors, self.names)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> EnrichedMatrix:
        cols = list(range(self.m)) if cols is None else list(cols)
        new_rows = []
        for i in rows:
            r = 0
            for j, c in enumerate(cols):
                if (self.rows[i] >> c) & 1:
                    r |= 1 << j
            new_rows.append(r)
        labels = [self.labels[i] for i in rows]
        colors = []
        for i, r in zip(rows, new_rows):
            col = self.colors[i]
            if self.labels[i] == "LR" and r:
                col = None
            colors.append(col)
        names = None if self.names is None else tuple(self.names[i] for i in rows)
        return EnrichedMatrix(len(cols), new_rows, labels, colors, names)

    def permuted(self, order: Sequence[int]) -> EnrichedMatrix:
        """Columns reordered so that new column ``j`` is old column ``order[j]``."""
        return self.submatrix(range(self.n), order)


def reverse_bits(r: int, m: int) -> int:
    out = 0
    for c in bits(r):
        out |= 1 << (m - 1 - c)
    return out


def parse_enriched(text: str) -> EnrichedMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError("header must be 'n m'") from None
    spec = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) == 2 and m == 0:
            parts.append("")
        if len(parts) != 3:
            raise ParseError(f"bad row line {ln!r}")
        lab, col, s = parts
        if lab not in LABELS or col not in ("-", "red", "blue") or len(s) != m or set(s) - {"0", "1"}:
            raise ParseError(f"bad row line {ln!r}")
        spec.append((lab, None if col == "-" else col, s))
    if len(spec) != n:
        raise ParseError(f"expected {n} rows, got {len(spec)}")
    if not spec:
        return EnrichedMatrix(m, (), (), ())
    try:
        return EnrichedMatrix.from_rows(spec)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_enriched(a: EnrichedMatrix) -> str:
    out = [f"{a.n} {a.m}\n"]
    for i in range(a.n):
        out.append(f"{a.labels[i]} {a.colors[i] or '-'} {a.bitstring(i)}\n")
    return "".join(out)


# ---------------------------------------------------------------- nestedness


def find_zero_gem(rows: Sequence[int]) -> tuple[int, int, tuple[int, int, int]] | None:
    """Two overlapping rows with columns (only-first, both, only-second)."""
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            a, b = rows[i], rows[j]
            both = a & b
            if both and a & ~b and b & ~a:
                x = (a & ~b).bit_length() - 1
                y = both.bit_length() - 1
                z = (b & ~a).bit_length() - 1
                return i, j, (x, y, z)
    return None


def is_nested(rows: Sequence[int]) -> tuple[bool, tuple | None]:
    """Nested iff no two rows overlap; returns a 0-gem witness otherwise.

    Pairwise disjoint-or-nested rows form a laminar family, which always has a
    consecutive-ones ordering, so the 0-gem scan decides the property.
    """
    gem = find_zero_gem(rows)
    return gem is None, gem


def rows_from_lists(mat: Sequence[Sequence[int]]) -> list[int]:
    return [sum(1 << c for c, x in enumerate(row) if x) for row in mat]


# ---------------------------------------------------------------- orderings


def _is_interval(mask: int) -> bool:
    if not mask:
        return True
    low = mask & -mask
    return (mask + low) & mask == 0


def _positions(r: int, order: Sequence[int]) -> int:
    out = 0
    for p, c in enumerate(order):
        if (r >> c) & 1:
            out |= 1 << p
    return out


def is_lr_ordering(a: EnrichedMatrix, order: Sequence[int]) -> bool:
    m = a.m
    full = (1 << m) - 1
    for r, lab in zip(a.rows, a.labels):
        p = _positions(r, order)
        if lab == "LR":
            if not _is_interval(full & ~p):
                return False
            continue
        if not _is_interval(p):
            return False
        if p and lab == "L" and not p & 1:
            return False
        if p and lab == "R" and not (p >> (m - 1)) & 1:
            return False
    return True


def _column_types(a: EnrichedMatrix) -> list[list[int]]:
    """Groups of identical columns, in order of first appearance."""
    groups: dict[tuple, list[int]] = {}
    for c in range(a.m):
        key = tuple((r >> c) & 1 for r in a.rows)
        groups.setdefault(key, []).append(c)
    return list(groups.values())


def lr_orderings(a: EnrichedMatrix, dedupe: bool = True) -> Iterator[tuple[int, ...]]:
    """Yield LR-orderings of ``a`` by prefix-pruned backtracking.

    With ``dedupe`` identical columns are kept in increasing order, which only
    drops orderings that differ by swapping equal columns.
    """
    m = a.m
    if m == 0:
        yield ()
        return
    full = (1 << m) - 1
    # constraint rows: non-LR rows as they are, LR rows complemented
    cons = []
    for r, lab in zip(a.rows, a.labels):
        if lab == "LR":
            cons.append((full & ~r, "U"))
        else:
            cons.append((r, lab))
    groups = _column_types(a) if dedupe else [[c] for c in range(m)]
    gid = {c: g for g, cols in enumerate(groups) for c in cols}
    nxt_in_group = [0] * len(groups)
    order: list[int] = []
    # per constraint row: 0 = not started, 1 = open, 2 = closed
    state = [0] * len(cons)

    def rec() -> Iterator[tuple[int, ...]]:
        pos = len(order)
        if pos == m:
            for (r, lab), st in zip(cons, state):
                if lab == "R" and r and st != 1:
                    return
            yield tuple(order)
            return
        for g, cols in enumerate(groups):
            k = nxt_in_group[g]
            if k == len(cols):
                continue
            c = cols[k]
            saved = []
            ok = True
            for idx, (r, lab) in enumerate(cons):
                if not r:
                    continue
                one = (r >> c) & 1
                st = state[idx]
                if one:
                    if st == 2:
                        ok = False
                        break
                    if st == 0:
                        if lab == "L" and pos != 0:
                            ok = False
                            break
                        saved.append((idx, st))
                        state[idx] = 1
                else:
                    if st == 1:
                        if lab == "R":
                            ok = False
                            break
                        saved.append((idx, st))
                        state[idx] = 2
                    elif st == 0 and lab == "L" and pos == 0:
                        ok = False
                        break
            if ok:
                order.append(c)
                nxt_in_group[g] += 1
                yield from rec()
                nxt_in_group[g] -= 1
                order.pop()
            for idx, st in saved:
                state[idx] = st

    yield from rec()


# ---------------------------------------------------------------- blocks


@dataclass(frozen=True)
class Block:
    row: int
    kind: str  # "U", "L" or "R"
    cols: int  # bitmask over original column ids


@dataclass(frozen=True)
class TwoNestedCertificate:
    ordering: tuple[int, ...]
    blocks: tuple[Block, ...]
    colors: tuple[str, ...]

    def blocks_of(self, row: int) -> list[tuple[Block, str]]:
        return [(b, c) for b, c in zip(self.blocks, self.colors) if b.row == row]


def _prefix_mask(order: Sequence[int], t: int) -> int:
    out = 0
    for c in order[:t]:
        out |= 1 << c
    return out


def block_choices(a: EnrichedMatrix, order: Sequence[int]) -> Iterator[list[Block]]:
    """All block assignments for an LR-ordering.

    Blocks are fixed by the ordering except for LR rows with a one in every
    column, whose ones may be cut into an L-prefix and an R-suffix anywhere.
    Every LR row gets both an L-block and an R-block; a missing one is empty.
    """
    m = a.m
    full = (1 << m) - 1
    fixed: list[Block] = []
    free_rows = []
    for i, (r, lab) in enumerate(zip(a.rows, a.labels)):
        if not r and lab != "LR":
            continue
        if lab in ("U", "L", "R"):
            fixed.append(Block(i, lab, r))
            continue
        if r == full:
            free_rows.append(i)
            continue
        lb = 0
        for c in order:
            if not (r >> c) & 1:
                break
            lb |= 1 << c
        rb = 0
        for c in reversed(order):
            if not (r >> c) & 1:
                break
            rb |= 1 << c
        fixed.append(Block(i, "L", lb))
        fixed.append(Block(i, "R", rb))

    def rec(k: int, acc: list[Block]) -> Iterator[list[Block]]:
        if k == len(free_rows):
            yield list(acc)
            return
        i = free_rows[k]
        for t in range(m + 1):
            lb = _prefix_mask(order, t)
            rb = full & ~lb
            yield from rec(k + 1, acc + [Block(i, "L", lb), Block(i, "R", rb)])

    yield from rec(0, fixed)


def _overlap(x: int, y: int) -> bool:
    return bool(x & y and x & ~y and y & ~x)


def _rows_overlap(a: EnrichedMatrix, i: int, j: int) -> bool:
    return _overlap(a.rows[i], a.rows[j])


def structural_ok(a: EnrichedMatrix, blocks: Sequence[Block]) -> bool:
    """Condition 4: blocks of LR rows never meet opposite-side blocks."""
    for b in blocks:
        if a.labels[b.row] != "LR":
            continue
        other = "R" if b.kind == "L" else "L"
        for c in blocks:
            if c.kind == other and c.row != b.row and b.cols & c.cols:
                return False
    return True


def coloring_constraints(a: EnrichedMatrix, blocks: Sequence[Block]) -> tuple[list[tuple[int, int, int]], dict[int, str]]:
    """Parity edges ``(x, y, d)`` meaning color(x) xor color(y) == d, plus fixed colors.

    Empty blocks of LR rows take part like any other block: an empty L-block
    is properly contained in every L-row block.  The color of an all-zero LR
    row is carried by its (empty) L-block.
    """
    edges: list[tuple[int, int, int]] = []
    fixed: dict[int, str] = {}
    lr_rows = [i for i, lab in enumerate(a.labels) if lab == "LR"]
    by_row: dict[int, dict[str, int]] = {}
    for x, b in enumerate(blocks):
        by_row.setdefault(b.row, {})[b.kind] = x
        col = a.colors[b.row]
        if col is not None and (a.labels[b.row] != "LR" or b.kind == "L"):  # condition 2
            fixed[x] = col
    for i in lr_rows:  # condition 1
        d = by_row[i]
        edges.append((d["L"], d["R"], 1))
    n = len(blocks)
    for x in range(n):
        bx = blocks[x]
        lx = a.labels[bx.row]
        for y in range(x + 1, n):
            by = blocks[y]
            if bx.row == by.row:
                continue
            ly = a.labels[by.row]
            kinds = {bx.kind, by.kind}
            # condition 3 (and its mirror for R-blocks)
            for p, q, lp, lq in ((bx, by, lx, ly), (by, bx, ly, lx)):
                if p.kind == q.kind and p.kind in "LR" and lp == "LR" and lq == p.kind:
                    if p.cols & ~q.cols == 0 and p.cols != q.cols:
                        edges.append((x, y, 1))
            if kinds == {"L", "R"} and bx.cols & by.cols:  # condition 5
                edges.append((x, y, 1))
            if bx.kind == "U" and by.kind == "U" and _overlap(bx.cols, by.cols):  # condition 6
                edges.append((x, y, 1))
            if "U" in kinds and kinds != {"U"}:  # condition 7
                u, s = (bx, by) if bx.kind == "U" else (by, bx)
                if u.cols & s.cols and u.cols & ~s.cols:
                    edges.append((x, y, 1))
    # condition 8: an LR row without an L-block forces all non-LR L-blocks equal
    for side in ("L", "R"):
        if any(blocks[by_row[i][side]].cols == 0 for i in lr_rows):
            xs = [x for x, b in enumerate(blocks) if b.kind == side and a.labels[b.row] != "LR"]
            edges.extend((xs[0], y, 0) for y in xs[1:])
    # condition 9
    for p in range(len(lr_rows)):
        for q in range(p + 1, len(lr_rows)):
            i, j = lr_rows[p], lr_rows[q]
            if _rows_overlap(a, i, j):
                edges.append((by_row[i]["L"], by_row[j]["R"], 0))
                edges.append((by_row[j]["L"], by_row[i]["R"], 0))
    return edges, fixed


def solve_parity(n: int, edges: Sequence[tuple[int, int, int]], fixed: dict[int, str]) -> list[str] | None:
    """2-color ``n`` nodes under xor constraints; node ``n`` is the red anchor."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for x, y, d in edges:
        adj[x].append((y, d))
        adj[y].append((x, d))
    for x, col in fixed.items():
        d = 0 if col == "red" else 1
        adj[x].append((n, d))
        adj[n].append((x, d))
    val = [-1] * (n + 1)
    for start in [n] + list(range(n)):
        if val[start] != -1:
            continue
        val[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y, d in adj[x]:
                want = val[x] ^ d
                if val[y] == -1:
                    val[y] = want
                    stack.append(y)
                elif val[y] != want:
                    return None
    return ["red" if v == 0 else "blue" for v in val[:n]]


def is_2nested(a: EnrichedMatrix) -> tuple[TwoNestedCertificate | None, str | None]:
    """Search suitable orderings for a block bi-coloring.

    Returns ``(certificate, None)`` on success and ``(None, reason)`` otherwise.
    """
    seen = set()
    any_order = False
    for order in lr_orderings(a):
        any_order = True
        for blocks in block_choices(a, order):
            key = frozenset((b.row, b.kind, b.cols) for b in blocks)
            if key in seen:
                continue
            seen.add(key)
            # unsuitable block layouts always break condition 4 or 7
            if not _suitable(a, blocks) or not structural_ok(a, blocks):
                continue
            edges, fixed = coloring_constraints(a, blocks)
            colors = solve_parity(len(blocks), edges, fixed)
            if colors is not None:
                return TwoNestedCertificate(tuple(order), tuple(blocks), tuple(colors)), None
    if not any_order:
        return None, "not LR-orderable"
    return None, "no block bi-coloring"


def suitable_orderings(a: EnrichedMatrix) -> Iterator[tuple[int, ...]]:
    """LR-orderings passing the suitability clauses for at least one block cut."""
    for order in lr_orderings(a):
        if any(_suitable(a, blocks) for blocks in block_choices(a, order)):
            yield order


def _suitable(a: EnrichedMatrix, blocks: Sequence[Block]) -> bool:
    by_row: dict[int, dict[str, int]] = {}
    for b in blocks:
        by_row.setdefault(b.row, {})[b.kind] = b.cols
    lblocks = [b.cols for b in blocks if b.kind == "L"]
    rblocks = [b.cols for b in blocks if b.kind == "R"]
    ublocks = [b.cols for b in blocks if b.kind == "U"]
    for i, lab in enumerate(a.labels):
        if lab != "LR":
            continue
        d = by_row[i]
        if d["L"] and d["R"]:
            if any(d["L"] & r for r in rblocks) or any(d["R"] & l for l in lblocks):
                return False
        for u in ublocks:
            if u & d["L"] and u & d["R"]:
                return False
    return True


def verify_certificate(a: EnrichedMatrix, cert: TwoNestedCertificate) -> bool:
    """Re-check a certificate: ordering, blocks, every coloring condition and the gem criterion."""
    order = cert.ordering
    if sorted(order) != list(range(a.m)) or not is_lr_ordering(a, order):
        return False
    blocks, colors = cert.blocks, cert.colors
    if len(blocks) != len(colors) or any(c not in ("red", "blue") for c in colors):
        return False
    if not any(sorted(blocks, key=_bkey) == sorted(bs, key=_bkey) for bs in block_choices(a, order)):
        return False
    if not _suitable(a, blocks):
        return False
    col = dict(zip(blocks, colors))
    return conditions_hold(a, blocks, col) and _gem_free(a, blocks, col)


def conditions_hold(a: EnrichedMatrix, blocks: Sequence[Block], col: dict) -> bool:
    """The nine block bi-coloring conditions, checked one by one."""
    by_row: dict[int, dict[str, Block]] = {}
    for b in blocks:
        by_row.setdefault(b.row, {})[b.kind] = b
    lr_rows = [i for i, lab in enumerate(a.labels) if lab == "LR"]
    for i in lr_rows:
        if col[by_row[i]["L"]] == col[by_row[i]["R"]]:
            return False
    for b in blocks:
        want = a.colors[b.row]
        if want is not None and (a.labels[b.row] != "LR" or b.kind == "L") and col[b] != want:
            return False
    for b in blocks:
        for c in blocks:
            if b.row == c.row:
                continue
            lb, lc = a.labels[b.row], a.labels[c.row]
            same = col[b] == col[c]
            if b.kind == c.kind and b.kind in "LR" and lb == "LR" and lc == b.kind:
                if b.cols != c.cols and b.cols & ~c.cols == 0 and same:
                    return False
            if lb == "LR" and b.kind in "LR" and c.kind in "LR" and b.kind != c.kind and b.cols & c.cols:
                return False
            if {b.kind, c.kind} == {"L", "R"} and b.cols & c.cols and same:
                return False
            if b.kind == "U" and c.kind == "U" and same and _overlap(b.cols, c.cols):
                return False
            if b.kind == "U" and c.kind in "LR" and same and b.cols & c.cols and b.cols & ~c.cols:
                return False
    for side in ("L", "R"):
        sides = [b for b in blocks if b.kind == side and a.labels[b.row] != "LR"]
        if len({col[b] for b in sides}) > 1 and any(by_row[i][side].cols == 0 for i in lr_rows):
            return False
    for i in lr_rows:
        for j in lr_rows:
            if i != j and _rows_overlap(a, i, j) and col[by_row[i]["L"]] != col[by_row[j]["R"]]:
                return False
    return True


def _bkey(b: Block) -> tuple:
    return (b.row, b.kind, b.cols)


def _gem_free(a: EnrichedMatrix, blocks: Sequence[Block], col: dict) -> bool:
    """No monochromatic gem or weak gem, no badly-colored doubly-weak gem."""
    for b in blocks:
        for c in blocks:
            if b.row >= c.row or col[b] != col[c]:
                continue
            if _overlap(b.cols, c.cols):
                return False
            lb, lc = a.labels[b.row], a.labels[c.row]
            for p, q, lp, lq in ((b, c, lb, lc), (c, b, lc, lb)):
                # weak gem: labeled block properly inside an unlabeled one
                if lp in ("L", "R") and lq == "U" and p.cols & ~q.cols == 0 and p.cols != q.cols:
                    return False
    lr_rows = [i for i, lab in enumerate(a.labels) if lab == "LR"]
    by_row: dict[int, dict[str, Block]] = {}
    for b in blocks:
        by_row.setdefault(b.row, {})[b.kind] = b
    for i in lr_rows:
        for j in lr_rows:
            if i >= j or not _rows_overlap(a, i, j):
                continue
            for side in ("L", "R"):
                bi, bj = by_row.get(i, {}).get(side), by_row.get(j, {}).get(side)
                if bi is not None and bj is not None and bi.cols & bj.cols and col[bi] == col[bj]:
                    if bi.cols != bj.cols:
                        return False
    return True


# ---------------------------------------------------------------- A* and tags


def star(a: EnrichedMatrix, lr_as_u: bool = False) -> EnrichedMatrix:
    """Complement LR rows and append all-ones L and R rows.

    With ``lr_as_u`` the complemented rows are relabelled U, which keeps them
    out of the tag columns.
    """
    full = (1 << a.m) - 1
    rows = [full & ~r if lab == "LR" else r for r, lab in zip(a.rows, a.labels)]
    labels = ["U" if lab == "LR" and lr_as_u else lab for lab in a.labels]
    colors = [None if lab == "LR" else col for lab, col in zip(a.labels, a.colors)]
    return EnrichedMatrix(a.m, rows + [full, full], labels + ["L", "R"], colors + [None, None])


@dataclass(frozen=True)
class TaggedMatrix:
    """0/1 matrix whose first and last columns are the tag columns c_L and c_R."""

    m: int
    rows: tuple[int, ...]
    colors: tuple[str | None, ...]
    tags: tuple[int, int]


def tagged(a: EnrichedMatrix) -> TaggedMatrix:
    """Shift columns right by one; column 0 is c_L, column m+1 is c_R."""
    rows = []
    for r, lab in zip(a.rows, a.labels):
        t = r << 1
        if lab in ("L", "LR"):
            t |= 1
        if lab in ("R", "LR"):
            t |= 1 << (a.m + 1)
        rows.append(t)
    return TaggedMatrix(a.m + 2, tuple(rows), a.colors, (0, a.m + 1))


def star_tagged(a: EnrichedMatrix, lr_as_u: bool = False) -> TaggedMatrix:
    return tagged(star(a, lr_as_u))


def row_count(mask: int) -> int:
    return popcount(mask)
