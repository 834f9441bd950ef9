import itertools
import random
from dataclasses import replace

import pytest

from splitcircle.errors import ParseError
from splitcircle.matrix import (
    EnrichedMatrix,
    find_zero_gem,
    format_enriched,
    is_2nested,
    is_nested,
    lr_orderings,
    parse_enriched,
    rows_from_lists,
    star,
    star_tagged,
    suitable_orderings,
    verify_certificate,
)
from splitcircle.oracle import OracleConfig, oracle_is_2nested, oracle_is_nested
from splitcircle.patterns import make_matrix_pattern
from splitcircle.selfcheck import random_enriched


def M(*spec):
    return EnrichedMatrix.from_rows(list(spec))


def _brute_gem(rows, m):
    for a, b in itertools.combinations(rows, 2):
        for x, y, z in itertools.permutations(range(m), 3):
            for p, q in ((a, b), (b, a)):
                if (p >> x) & 1 and not (q >> x) & 1 and (p >> y) & (q >> y) & 1 and (q >> z) & 1 and not (p >> z) & 1:
                    return True
    return False


def _consecutive(mask, order):
    pos = [i for i, c in enumerate(order) if (mask >> c) & 1]
    return not pos or pos[-1] - pos[0] + 1 == len(pos)


def _brute_lr(a, order):
    """The three LR-ordering bullets evaluated directly."""
    m = len(order)
    full = (1 << m) - 1
    for r, lab in zip(a.rows, a.labels):
        if lab == "LR":
            if not _consecutive(full & ~r, order):
                return False
            continue
        if not _consecutive(r, order):
            return False
        if lab == "L" and r and not (r >> order[0]) & 1:
            return False
        if lab == "R" and r and not (r >> order[-1]) & 1:
            return False
    return True


def test_enriched_format_round_trip():
    text = "3 3\nL red 110\nU - 011\nLR - 000\n"
    a = parse_enriched(text)
    assert format_enriched(a) == text
    assert a.labels == ("L", "U", "LR") and a.colors == ("red", None, None)


@pytest.mark.parametrize("text", ["", "1 2\nQ - 10\n", "2 2\nU - 10\n", "1 2\nU red 10\n", "1 2\nU - 1\n"])
def test_enriched_parse_errors(text):
    with pytest.raises(ParseError):
        parse_enriched(text)


def test_enriched_color_rules():
    with pytest.raises(ValueError):
        M(("LR", "red", "00"), ("LR", "blue", "00"))
    with pytest.raises(ValueError):
        M(("LR", "red", "10"))


def test_dual_mirrors_and_swaps():
    a = M(("L", "red", "110"), ("U", None, "010"))
    d = a.dual()
    assert d.labels == ("R", "U") and d.bitstring(0) == "011" and d.colors == a.colors


def test_is_nested_gem():
    ok, wit = is_nested(rows_from_lists([[1, 1, 0], [0, 1, 1]]))
    assert not ok and wit == (0, 1, (0, 1, 2))
    assert is_nested(rows_from_lists([[1, 0], [0, 1]])) == (True, None)


def test_is_nested_matches_pair_triple_scan():
    rng = random.Random(7)
    for _ in range(50):
        rows = [rng.getrandbits(5) for _ in range(5)]
        assert is_nested(rows)[0] == (not _brute_gem(rows, 5))
        assert is_nested(rows)[0] == oracle_is_nested(rows, 5)


def test_oracle_nested_examples():
    assert not oracle_is_nested(rows_from_lists([[1, 1, 0], [0, 1, 1]]), 3)
    assert oracle_is_nested(rows_from_lists([[1, 1], [1, 1]]), 2)


def test_find_zero_gem_none_on_laminar():
    assert find_zero_gem([0b1111, 0b0011, 0b0001, 0b1000]) is None


def test_star_tagged_empty_lr_row():
    t = star_tagged(M(("LR", None, "000")))
    assert t.m == 5 and t.tags == (0, 4)
    assert t.rows[0] == 0b11111
    assert len(t.rows) == 3


def test_star_tagged_single_u_row():
    t = star_tagged(M(("U", None, "10")))
    assert len(t.rows) == 3 and t.m == 4
    assert t.rows == (0b0010, 0b0111, 0b1110)


def test_star_tagged_d3_tags_follow_labels():
    a = make_matrix_pattern("D3").matrix
    t = star_tagged(a)
    for r, lab in zip(t.rows, a.labels):
        assert bool(r & 1) == (lab in ("L", "LR"))
        assert bool((r >> (t.m - 1)) & 1) == (lab in ("R", "LR"))


def test_star_relabel_keeps_complements_out_of_tags():
    a = M(("LR", None, "100"))
    s = star(a, lr_as_u=True)
    assert s.labels[0] == "U" and s.bitstring(0) == "011"
    assert star(a).labels[0] == "LR"


def test_lr_orderings_tucker_mi3():
    a = M(("U", None, "110"), ("U", None, "011"), ("U", None, "101"))
    assert list(lr_orderings(a)) == []


def test_lr_orderings_match_permutation_filter():
    rng = random.Random(11)
    for _ in range(40):
        a = random_enriched(rng, 4, 4)
        got = set(lr_orderings(a, dedupe=False))
        want = {o for o in itertools.permutations(range(a.m)) if _brute_lr(a, o)}
        assert got == want


def test_suitable_ordering_excludes_lr_block_meeting_r_block():
    a = M(("LR", None, "1001"), ("R", None, "1111"), ("U", None, "0110"))
    assert (0, 1, 2, 3) in set(lr_orderings(a, dedupe=False))
    assert (0, 1, 2, 3) not in set(suitable_orderings(a))


def test_is_2nested_examples():
    d0 = make_matrix_pattern("D0").matrix
    cert, reason = is_2nested(d0)
    assert cert is None and reason
    cert, _ = is_2nested(M(("U", None, "11")))
    assert cert is not None and len(cert.blocks) == 1 and verify_certificate(M(("U", None, "11")), cert)


def test_is_2nested_respects_precolor():
    a = M(("L", "red", "10"))
    cert, _ = is_2nested(a)
    assert cert is not None and cert.colors == ("red",)
    assert oracle_is_2nested(a)[0]


def test_oracle_rejects_d2():
    assert not oracle_is_2nested(make_matrix_pattern("D2").matrix)[0]


def test_is_2nested_matches_oracle_on_small_sample():
    rng = random.Random(13)
    cfg = OracleConfig()
    for _ in range(200):
        a = random_enriched(rng, 3, 4)
        cert, _ = is_2nested(a)
        assert (cert is not None) == oracle_is_2nested(a, cfg)[0]
        if cert is not None:
            assert verify_certificate(a, cert)


def test_certificate_with_both_lr_blocks_red_rejected():
    a = M(("LR", None, "1001"))
    cert, _ = is_2nested(a)
    assert verify_certificate(a, cert)
    assert sorted(b.kind for b in cert.blocks) == ["L", "R"]
    bad = replace(cert, colors=("red",) * len(cert.blocks))
    assert not verify_certificate(a, bad)


def test_certificate_with_overlapping_same_colored_u_blocks_rejected():
    a = M(("U", None, "110"), ("U", None, "011"))
    cert, _ = is_2nested(a)
    assert verify_certificate(a, cert) and cert.colors[0] != cert.colors[1]
    assert not verify_certificate(a, replace(cert, colors=("blue", "blue")))
