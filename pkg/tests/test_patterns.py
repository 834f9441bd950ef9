import itertools
import random

import pytest

from splitcircle.errors import InvalidParameter
from splitcircle.matrix import EnrichedMatrix, is_2nested
from splitcircle.oracle import OracleConfig, oracle_is_2nested
from splitcircle.patterns import (
    ADMISSIBILITY,
    FIXED,
    SUSPECT,
    catalog_patterns,
    detect_forbidden,
    find_subconfiguration,
    is_admissible,
    make_matrix_pattern,
)
from splitcircle.selfcheck import random_enriched


def M(*spec):
    return EnrichedMatrix.from_rows(list(spec))


def _brute_match(host, pat):
    """Ordered row/column selections compared entry by entry."""
    p = pat.matrix
    for rows in itertools.permutations(range(host.n), p.n):
        ok = True
        for r, h in enumerate(rows):
            lab_ok = host.labels[h] == p.labels[r] or (r in pat.flex and host.labels[h] == "LR")
            if not lab_ok or (p.colors[r] is not None and host.colors[h] is None):
                ok = False
                break
        if not ok:
            continue
        colored = [r for r in range(p.n) if p.colors[r] is not None]
        if any((p.colors[x] == p.colors[y]) != (host.colors[rows[x]] == host.colors[rows[y]]) for x in colored for y in colored):
            continue
        for cols in itertools.permutations(range(host.m), p.m):
            if all(((host.rows[h] >> c) & 1) == ((p.rows[r] >> j) & 1) for r, h in enumerate(rows) for j, c in enumerate(cols)):
                return True
    return False


def test_d0_shape():
    p = make_matrix_pattern("D0")
    assert (p.matrix.n, p.matrix.m) == (2, 2)
    assert [p.matrix.bitstring(i) for i in range(2)] == ["10", "01"]
    assert p.matrix.labels == ("L", "L")
    assert make_matrix_pattern("D0", dual=True).matrix.labels == ("R", "R")


def test_s0_and_m0_shapes():
    s0 = make_matrix_pattern("S0", 4).matrix
    assert (s0.n, s0.m) == (5, 4)
    m0 = make_matrix_pattern("M0").matrix
    assert (m0.n, m0.m) == (3, 4) and m0.bitstring(0) == "1011"


@pytest.mark.parametrize("tag,k", [("Nope", None), ("S0", 2), ("S7", 5), ("F1", 4)])
def test_invalid_patterns(tag, k):
    with pytest.raises(InvalidParameter):
        make_matrix_pattern(tag, k)


def test_detects_d0():
    names = [o.pattern for o in detect_forbidden(make_matrix_pattern("D0").matrix)]
    assert "D0" in names


def test_zero_matrix_clean():
    a = M(("U", None, "000"), ("U", None, "000"))
    assert detect_forbidden(a) == []
    assert detect_forbidden(a, first_only=False) == []


def test_detects_s2_four_same_colored_ends():
    a = make_matrix_pattern("S2", 4).matrix
    ends = [i for i in range(a.n) if a.colors[i] is not None]
    assert a.colors[ends[0]] == a.colors[ends[-1]]
    assert any(o.pattern.startswith("S2") for o in detect_forbidden(a))


def test_admissibility_examples():
    assert not is_admissible(make_matrix_pattern("D1").matrix)
    assert is_admissible(M(("U", None, "1")))


def test_admissibility_matches_brute_scan():
    pats = [p for p in catalog_patterns(4, 4) if not p.star_context and p.tag.startswith(ADMISSIBILITY)]
    rng = random.Random(17)
    for _ in range(60):
        a = random_enriched(rng, 4, 4)
        want = not any(_brute_match(a, p) for p in pats if p.matrix.n <= a.n and p.matrix.m <= a.m)
        assert is_admissible(a) == want


def test_subconfiguration_search_matches_brute():
    rng = random.Random(19)
    pats = [make_matrix_pattern(t) for t in ("D0", "D1", "D2", "D4", "M0")]
    for _ in range(60):
        a = random_enriched(rng, 4, 4)
        for p in pats:
            assert (find_subconfiguration(a, p) is not None) == _brute_match(a, p)


def test_every_trusted_pattern_is_not_2nested():
    cfg = OracleConfig()
    for p in catalog_patterns(7, 7):
        assert is_2nested(p.matrix)[0] is None, p.name
        assert not oracle_is_2nested(p.matrix, cfg)[0], p.name


def test_every_trusted_pattern_detects_itself():
    for p in catalog_patterns(6, 6):
        hits = detect_forbidden(p.matrix)
        assert hits, p.name


def test_suspect_patterns_flagged():
    assert SUSPECT == {"D13", "S7"}
    assert "D13" in FIXED
    assert all(p.tag not in SUSPECT or p.k == 3 for p in catalog_patterns(8, 8))


def test_detection_is_sound():
    # nothing is reported on a 2-nested matrix
    rng = random.Random(23)
    cfg = OracleConfig()
    for _ in range(300):
        a = random_enriched(rng, 4, 5)
        if oracle_is_2nested(a, cfg)[0]:
            assert detect_forbidden(a) == [], repr(a)


def test_detection_permutation_invariant():
    rng = random.Random(29)
    for _ in range(80):
        a = random_enriched(rng, 4, 5)
        order = list(range(a.m))
        rng.shuffle(order)
        perm = a.permuted(order)
        rows = list(range(a.n))
        rng.shuffle(rows)
        shuffled = perm.submatrix(rows)
        assert bool(detect_forbidden(a)) == bool(detect_forbidden(shuffled))


def test_all_occurrences_mode_lists_distinct_sets():
    a = M(("L", None, "100"), ("L", None, "010"), ("L", None, "001"))
    occ = [o for o in detect_forbidden(a, first_only=False) if o.pattern == "D0"]
    assert len({frozenset(o.rows) for o in occ}) == len(occ) == 3


@pytest.mark.xfail(strict=True, reason="pattern list misses some non-2-nested pre-colored matrices; see decisions ledger")
def test_detection_is_complete():
    rng = random.Random(31)
    cfg = OracleConfig()
    for _ in range(400):
        a = random_enriched(rng, 4, 5)
        if not oracle_is_2nested(a, cfg)[0]:
            assert detect_forbidden(a), repr(a)
