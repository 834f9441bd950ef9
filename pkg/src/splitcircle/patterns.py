"""Forbidden enriched-matrix patterns and subconfiguration search.

Patterns are kept as :class:`EnrichedMatrix` instances.  Two colours in a
pattern only say whether rows agree or differ: green rows are
stored as red, orange rows as blue.  Rows listed in ``flex`` accept either
their own label or LR.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .errors import InvalidParameter
from .graph import popcount
from .matrix import EnrichedMatrix, find_zero_gem, star, star_tagged

G, O = "red", "blue"


def _bits(m: int, ones) -> str:
    ones = set(ones)
    return "".join("1" if c in ones else "0" for c in range(m))


def _all_but(m: int, zeros) -> str:
    return _bits(m, set(range(m)) - set(zeros))


def _chain(m: int, a: int, b: int, label: str = "U") -> list[tuple[str, str | None, str]]:
    """Rows with ones at (i, i+1) for i = a..b-1."""
    return [(label, None, _bits(m, {i, i + 1})) for i in range(a, b)]


def _fixed(rows) -> list[tuple[str, str | None, str]]:
    out = []
    for r in rows:
        if isinstance(r, str):
            out.append(("U", None, r))
        else:
            out.append(r)
    return out


# ---------------------------------------------------------------- pattern table


@dataclass(frozen=True)
class MatrixPattern:
    tag: str
    k: int | None
    l: int | None
    dual: bool
    matrix: EnrichedMatrix
    flex: frozenset[int] = frozenset()
    star_context: bool = False  # searched in A* rather than A

    @property
    def name(self) -> str:
        args = [str(x) for x in (self.k, self.l) if x is not None]
        base = self.tag + (f"({','.join(args)})" if args else "")
        return ("dual " if self.dual else "") + base


FIXED = {
    "M0": ["1011", "1110", "0111"],
    "MII4": ["0111", "1100", "0110", "1101"],
    "MV": ["11000", "00110", "11110", "10011"],
    "MIV": ["110000", "001100", "000011", "010101"],
    "D0": [("L", None, "10"), ("L", None, "01")],
    "D1": [("L", G, "1"), ("R", G, "1")],
    "D2": [("L", G, "10"), ("R", O, "10")],
    "D3": [("L", G, "100"), ("R", O, "001"), ("LR", None, "010")],
    "D4": [("L", G, "1"), ("L", O, "1"), ("LR", None, "0")],
    "D5": [("L", G, "1"), ("R", O, "1"), ("LR", None, "1")],
    "D6": [("L", G, "10"), ("R", G, "01"), ("LR", None, "00")],
    "D7": [("L", None, "100"), ("LR", None, "010"), ("LR", None, "001")],
    "D8": [("L", None, "110"), ("LR", None, "101"), ("LR", None, "011")],
    "D9": [("L", None, "1110"), ("LR", None, "1100"), ("LR", None, "1001")],
    "D10": [("L", G, "1100"), ("R", O, "0011"), ("LR", None, "1011"), ("LR", None, "1101")],
    "D11": [("LR", None, "100"), ("LR", None, "010"), ("LR", None, "001")],
    "D12": [("LR", None, "101"), ("LR", None, "110"), ("LR", None, "011")],
    "D13": [("LR", None, "1100"), ("LR", None, "0110"), ("LR", None, "0011")],
    "F0": ["11100", "01110", "00111"],
    "F0'": [("L", None, "1100"), "1110", "0111"],
    "F0''": [("L", None, "110"), "111", ("R", None, "011")],
    "S6(3)": [("LR", None, "110"), ("R", None, "011"), "110"],
    "S6'(3)": [("LR", None, "110"), ("R", None, "011"), "111"],
    "S7(3)": [("LR", None, "11001"), ("LR", None, "10011"), "11100"],
    "M4'": [("L", None, "10000"), "01100", "00011", "10101"],
    "M4''": [("L", None, "1000"), ("R", None, "0100"), "0011", "1101"],
    "M5'": ["1100", "0011", ("R", None, "1001"), "1111"],
    "M5''": [("L", None, "1000"), "0110", "1011", ("L", None, "1110")],
}
FLEX = {"F0'": {0}, "F1'": "ends", "F2'": {1}}
STAR_TAGS = {"MI", "MII", "MIII", "MIV", "MV*", "M2'", "M2''", "M3'", "M3''", "M4'", "M4''", "M5'", "M5''"}

# patterns that turn out 2-nested; kept for the catalog check only
SUSPECT = {"D13", "S7"}

PARAMS = {
    # tag: (min k, parity or None, needs l)
    "S0": (4, 0, False), "F1": (5, 1, False), "F2": (5, 1, False), "F1'": (5, 1, False), "F2'": (5, 1, False),
    "S1": (3, None, False), "S2": (3, None, False), "S3": (3, None, False), "S4": (4, None, False),
    "S5": (4, None, False), "S6": (3, None, False), "S7": (3, None, False), "S8": (4, 0, False),
    "P0": (4, None, True), "P1": (5, None, True), "P2": (7, None, True),
    "MI": (3, None, False), "MII": (4, None, False), "MIII": (3, None, False),
    "M2'": (4, None, False), "M2''": (5, None, False), "M3'": (4, None, False), "M3''": (4, None, False),
}


def _parametric(tag: str, k: int, l: int | None) -> list:
    if tag == "S0":
        return ["1" * k] + [r[2] for r in _chain(k, 0, k - 1)] + [_bits(k, {0, k - 1})]
    if tag in ("F1", "F2"):
        from .catalog import fsc_matrix

        return ["".join(map(str, row)) for row in fsc_matrix(tag, k)]
    if tag == "F1'":
        m = k - 2
        rows = ["1" * m, ("L", None, _all_but(m, {m - 1}))]
        rows += [_bits(m, {i, i + 1}) for i in range(m - 2, -1, -1)]
        return rows + [("L", None, _bits(m, {0}))]
    if tag == "F2'":
        m = k - 1
        return [_all_but(m, {m - 1}), ("L", None, _bits(m, {0}))] + _chain(m, 0, m - 1)
    if tag == "S1":
        if k % 2:
            return [("L", None, _bits(k, {0}))] + _chain(k, 0, k - 1) + [("LR", None, _bits(k, {k - 1}))]
        m = k - 2
        return [("L", None, _bits(m, {0}))] + _chain(m, 0, m - 1) + [("LR", None, _bits(m, {m - 1})), ("L", None, "1" * m)]
    if tag in ("S2", "S3"):
        m = k - 1
        last = O if k % 2 else G
        end = ("L", last, _all_but(m, {m - 1})) if tag == "S2" else ("R", last, _bits(m, {m - 1}))
        return [("L", G, _bits(m, {0}))] + _chain(m, 0, m - 1) + [end]
    if tag == "S4":
        m = k - 2
        return [("LR", None, "1" * m), ("L", G, _bits(m, {0}))] + _chain(m, 0, m - 1) + [("R", O, _bits(m, {m - 1}))]
    if tag == "S5":
        m = k - 2
        return ([("L", G, _bits(m, {0}))] + _chain(m, 0, m - 1)
                + [("LR", None, _all_but(m, {m - 1})), ("L", O if k % 2 else G, "1" * m)])
    if tag == "S6":
        if k == 3:
            return FIXED["S6(3)"]
        return [("LR", None, _all_but(k, {k - 1})), ("R", None, _all_but(k, {0}))] + _chain(k, 0, k - 2)
    if tag == "S7":
        if k == 3:
            return FIXED["S7(3)"]
        m = k + 1
        return [("LR", None, _bits(m, {0, 1})), ("LR", None, _bits(m, {0, m - 1}))] + _chain(m, 1, m - 1)
    if tag == "S8":
        return [("LR", None, _bits(k, {0, k - 1}))] + _chain(k, 0, k - 1)
    if tag in ("P0", "P1", "P2"):
        return _p_family(tag, k, l)
    if tag == "MI":
        return [_bits(k, {i, (i + 1) % k}) for i in range(k)]
    if tag == "MII":
        return [r[2] for r in _chain(k, 0, k - 2)] + [_all_but(k, {k - 2}), _all_but(k, {0})]
    if tag == "MIII":
        m = k + 1
        return [r[2] for r in _chain(m, 0, k - 1)] + [_bits(m, set(range(1, k - 1)) | {k})]
    if tag == "M2'":
        m = k - 1
        return ["1" * m, ("L", None, _bits(m, {0}))] + _chain(m, 0, m - 2) + [("L", None, _all_but(m, {m - 2}))]
    if tag == "M2''":
        m = k - 1
        return ([("R", None, "1" * m), ("L", None, _bits(m, {0}))] + _chain(m, 0, m - 2)
                + [("R", None, _bits(m, {m - 2})), ("L", None, "1" * m)])
    if tag == "M3'":
        m = k
        return [("L", None, _bits(m, {0}))] + _chain(m, 0, m - 2) + [_all_but(m, {m - 2})]
    if tag == "M3''":
        m = k
        return _chain(m, 0, m - 1) + [("R", None, _bits(m, set(range(1, m - 1))))]
    raise InvalidParameter(f"unknown pattern {tag!r}")


def _p_family(tag: str, k: int, l: int) -> list:
    ends = (G, G) if k % 2 else (G, O)
    if l == 0:
        m = k if tag == "P0" else k - 1
        zeros = {"P0": [{1, 2}], "P1": [{1}, {2}], "P2": [{1}, {3}, {2}, {3, 4}]}[tag]
        start = {"P0": 2, "P1": 2, "P2": 4}[tag]
        head = [("L", ends[0], _bits(m, {0, 1}))]
    else:
        m = k - 1 if tag == "P0" else k - 2
        zeros = {"P0": [{l, l + 1}], "P1": [{l}, {l + 1}], "P2": [{l}, {l + 2}, {l + 1}, {l + 2, l + 3}]}[tag]
        start = {"P0": l + 1, "P1": l + 1, "P2": l + 3}[tag]
        head = [("L", ends[0], _bits(m, {0}))] + _chain(m, 0, l)
    rows = head + [("LR", None, _all_but(m, z)) for z in zeros]
    rows += _chain(m, start, m - 1) + [("R", ends[1], _bits(m, {m - 1}))]
    return rows


def _check_k(tag: str, k, l) -> None:
    lo, parity, needs_l = PARAMS[tag]
    if tag == "S7" and isinstance(k, int) and k > 3:
        parity = 0
    if not isinstance(k, int) or k < lo or (parity is not None and k % 2 != parity):
        raise InvalidParameter(f"bad parameter k={k!r} for {tag}")
    if needs_l:
        if not isinstance(l, int) or l < 0:
            raise InvalidParameter(f"{tag} needs l >= 0")
        if l > 0 and k < {"P0": 5, "P1": 6, "P2": 8}[tag]:
            raise InvalidParameter(f"{tag}(k, l>0) needs a larger k")
        width = {"P0": k - 1, "P1": k - 2, "P2": k - 2}[tag]
        if l > 0 and l + {"P0": 2, "P1": 2, "P2": 4}[tag] > width:
            raise InvalidParameter(f"l={l} too large for {tag}({k})")
    elif l is not None:
        raise InvalidParameter(f"{tag} takes no l parameter")


def _swap_labels(spec: list) -> list:
    sw = {"L": "R", "R": "L"}
    return [(sw.get(lab, lab), col, s[::-1]) for lab, col, s in spec]


def make_matrix_pattern(tag: str, k: int | None = None, l: int | None = None, dual: bool = False) -> MatrixPattern:
    """Pattern instance; ``dual`` mirrors the columns and swaps L with R."""
    if tag in FIXED and tag not in ("S6(3)", "S6'(3)", "S7(3)"):
        if k is not None or l is not None:
            raise InvalidParameter(f"{tag} takes no parameters")
        spec = _fixed(FIXED[tag])
    elif tag == "S6'":
        if k != 3:
            raise InvalidParameter("S6' exists only for k = 3")
        spec = _fixed(FIXED["S6'(3)"])
    elif tag in PARAMS:
        _check_k(tag, k, l)
        spec = _fixed(_parametric(tag, k, l))
    else:
        raise InvalidParameter(f"unknown pattern {tag!r}")
    flex = FLEX.get(tag, set())
    if flex == "ends":
        flex = {1, len(spec) - 1}
    if dual:
        spec = _swap_labels(spec)
    return MatrixPattern(tag, k, l, dual, EnrichedMatrix.from_rows(spec), frozenset(flex), tag in STAR_TAGS)


# ---------------------------------------------------------------- enumeration


def _instances(tag: str, max_rows: int, max_cols: int) -> Iterator[MatrixPattern]:
    if tag not in PARAMS:
        yield make_matrix_pattern(tag)
        return
    lo, _, needs_l = PARAMS[tag]
    for k in range(lo, max_rows + 3):
        ls = range(0, k) if needs_l else [None]
        for l in ls:
            try:
                p = make_matrix_pattern(tag, k, l)
            except InvalidParameter:
                continue
            if p.matrix.n <= max_rows and p.matrix.m <= max_cols:
                yield p


A_TAGS = (["M0", "MII4", "MV", "S0"] + [f"D{i}" for i in range(14)]
          + ["F0", "F1", "F2", "F0'", "F0''", "F1'", "F2'"]
          + ["S1", "S2", "S3", "S4", "S5", "S6", "S6'", "S7", "S8", "P0", "P1", "P2"])
STAR_FAMILY = ["MI", "MII", "MIII", "MIV", "MV", "M2'", "M2''", "M3'", "M3''", "M4'", "M4''", "M5'", "M5''"]
ADMISSIBILITY = ("D", "S", "P")
TUCKER = ("MI", "MII", "MIII", "MIV", "MV")


def catalog_patterns(max_rows: int, max_cols: int, include_suspect: bool = False) -> Iterator[MatrixPattern]:
    """Every pattern (and dual) fitting the bounds, family by family."""
    for tag in A_TAGS + STAR_FAMILY:
        if tag == "S6'":
            pats = [make_matrix_pattern("S6'", 3)]
        else:
            pats = list(_instances(tag, max_rows, max_cols))
        for p in pats:
            if not include_suspect and _base(p.tag) in SUSPECT and p.k != 3:
                continue
            if p.matrix.n > max_rows or p.matrix.m > max_cols:
                continue
            star_ctx = tag in STAR_FAMILY
            p = MatrixPattern(p.tag, p.k, p.l, False, p.matrix, p.flex, star_ctx)
            yield p
            d = make_matrix_pattern(p.tag, p.k, p.l, dual=True) if p.tag != "S6'" else make_matrix_pattern("S6'", 3, dual=True)
            yield MatrixPattern(d.tag, d.k, d.l, True, d.matrix, d.flex, star_ctx)


def _base(tag: str) -> str:
    return tag.rstrip("'")


# ---------------------------------------------------------------- search


def _label_ok(plab: str, flex: bool, hlab: str, star_ctx: bool, tucker: bool) -> bool:
    if tucker:
        return True
    if plab == hlab:
        return True
    return flex and hlab == "LR"


def iter_subconfigurations(host: EnrichedMatrix, pat: MatrixPattern) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Host rows and columns realizing ``pat`` (pattern row i -> rows[i], column j -> cols[j]).

    Distinct images may repeat the same row and column sets when the
    pattern has symmetries.
    """
    p = pat.matrix
    if p.n > host.n or p.m > host.m:
        return
    tucker = pat.tag in TUCKER and pat.star_context
    colmask = [sum(1 << h for h in range(host.n) if (host.rows[h] >> c) & 1) for c in range(host.m)]
    allrows = (1 << host.n) - 1
    cand0 = []
    for r in range(p.n):
        mask = 0
        for h in range(host.n):
            if not _label_ok(p.labels[r], r in pat.flex, host.labels[h], pat.star_context, tucker):
                continue
            if p.colors[r] is not None and host.colors[h] is None:
                continue
            if popcount(host.rows[h]) < popcount(p.rows[r]):
                continue
            mask |= 1 << h
        if not mask:
            return
        cand0.append(mask)
    pcols = sorted(range(p.m), key=lambda j: -sum((row >> j) & 1 for row in p.rows))
    colored = [r for r in range(p.n) if p.colors[r] is not None]
    assign_c = [-1] * p.m

    def color_ok(img, r: int, h: int) -> bool:
        if p.colors[r] is None:
            return True
        for q in colored:
            if img[q] >= 0 and (p.colors[q] == p.colors[r]) != (host.colors[img[q]] == host.colors[h]):
                return False
        return True

    def rows_match(cand) -> Iterator[tuple[int, ...]]:
        order = sorted(range(p.n), key=lambda r: popcount(cand[r]))
        img = [-1] * p.n

        def rec(t: int, used: int) -> Iterator[tuple[int, ...]]:
            if t == p.n:
                yield tuple(img)
                return
            r = order[t]
            m = cand[r] & ~used
            while m:
                h = (m & -m).bit_length() - 1
                m &= m - 1
                if not color_ok(img, r, h):
                    continue
                img[r] = h
                yield from rec(t + 1, used | (1 << h))
                img[r] = -1

        yield from rec(0, 0)

    def rec_col(t: int, cand, used_cols: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        if t == p.m:
            for img in rows_match(cand):
                yield img, tuple(assign_c)
            return
        j = pcols[t]
        for c in range(host.m):
            if used_cols >> c & 1:
                continue
            new = []
            for r in range(p.n):
                want = (p.rows[r] >> j) & 1
                nm = cand[r] & (colmask[c] if want else allrows & ~colmask[c])
                if not nm:
                    break
                new.append(nm)
            else:
                assign_c[j] = c
                yield from rec_col(t + 1, new, used_cols | (1 << c))
        assign_c[j] = -1

    yield from rec_col(0, cand0, 0)


def find_subconfiguration(host: EnrichedMatrix, pat: MatrixPattern) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    return next(iter_subconfigurations(host, pat), None)


@dataclass(frozen=True)
class Occurrence:
    pattern: str
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    in_star: bool = False


def _gem_occurrences(a: EnrichedMatrix) -> list[Occurrence]:
    """Monochromatic gems among pre-colored rows."""
    out = []
    colored = [i for i in range(a.n) if a.colors[i] is not None and a.rows[i]]
    for x in range(len(colored)):
        for y in range(x + 1, len(colored)):
            i, j = colored[x], colored[y]
            if a.colors[i] != a.colors[j]:
                continue
            gem = find_zero_gem([a.rows[i], a.rows[j]])
            if gem is not None:
                out.append(Occurrence("monochromatic gem", (i, j), gem[2]))
    return out


def _empty_lr_conflicts(a: EnrichedMatrix) -> list[Occurrence]:
    """A colored all-zero LR row lends its color to its empty L-block.

    That block sits properly inside every nonempty L-row, and its empty
    R-block (opposite color) inside every nonempty R-row, so matching colors
    there cannot be realized.
    """
    out = []
    for i in range(a.n):
        if a.labels[i] != "LR" or a.rows[i] or a.colors[i] is None:
            continue
        for j in range(a.n):
            if not a.rows[j] or a.colors[j] is None:
                continue
            if (a.labels[j] == "L" and a.colors[j] == a.colors[i]) or (a.labels[j] == "R" and a.colors[j] != a.colors[i]):
                out.append(Occurrence("badly-colored empty LR row", (i, j), ()))
    return out


def _tagged_host(a: EnrichedMatrix) -> EnrichedMatrix:
    t = star_tagged(a, lr_as_u=True)
    return EnrichedMatrix(t.m, t.rows, ["U"] * len(t.rows), [None] * len(t.rows))


def detect_forbidden(a: EnrichedMatrix, first_only: bool = True, families: tuple[str, ...] | None = None,
                     include_suspect: bool = False) -> list[Occurrence]:
    """Occurrences of forbidden patterns in ``a``, in A* and in the tagged A*.

    With ``first_only`` only the first hit of each family (and of its dual)
    is reported; otherwise every occurrence, one per row and column set.
    ``families`` restricts to A-context tags starting with one of the given
    prefixes and skips the gem checks.
    """
    out: list[Occurrence] = []
    s = star(a, lr_as_u=True)
    t = _tagged_host(a)
    done: set[tuple[str, bool, bool]] = set()
    for pat in catalog_patterns(s.n, t.m, include_suspect):
        if families is not None and (pat.star_context or not pat.tag.startswith(families)):
            continue
        key = (pat.tag, pat.dual, pat.star_context)
        if first_only and key in done:
            continue
        if pat.tag in TUCKER and pat.star_context:
            host = t
        else:
            host = s if pat.star_context else a
        seen = set()
        for rows, cols in iter_subconfigurations(host, pat):
            sig = (frozenset(rows), frozenset(cols))
            if sig in seen:
                continue
            seen.add(sig)
            out.append(Occurrence(pat.name, rows, cols, pat.star_context))
            if first_only:
                done.add(key)
                break
    if families is None:
        gems = _gem_occurrences(a) + _empty_lr_conflicts(a)
        out += gems[:1] if first_only else gems
    return out


def is_admissible(a: EnrichedMatrix) -> bool:
    """No pattern of the D, S or P families (or their duals) occurs."""
    return not detect_forbidden(a, families=ADMISSIBILITY)
