"""The acceptance suite: eight property checks with pass/fail results."""

from __future__ import annotations

import itertools
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field

from .catalog import FAMILIES, PARAMETRIC, fsc_matrix, fsc_members, make_fsc, reduction_script, script_reaches_target
from .chord import interlacement
from .errors import InvalidParameter
from .graph import Graph, are_isomorphic, delete_vertex, local_complement
from .matrix import EnrichedMatrix, is_2nested, is_nested
from .oracle import (
    OracleConfig,
    enumerate_graphs,
    enumerate_split_graphs,
    oracle_is_2nested,
    oracle_is_circle,
    oracle_is_nested,
    random_split_graph,
)
from .patterns import MatrixPattern, catalog_patterns, find_subconfiguration
from .recognize import Analysis, analyze, recognize
from .split import recompose


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f"; first failures: {'; '.join(self.failures[:3])}" if self.failures else ""
        return f"[{mark}] {self.number}. {self.title} ({self.checked} checked, {self.seconds:.1f}s){extra}"


@dataclass
class Suite:
    """Shared inputs: the exhaustive and random split graphs with oracle verdicts."""

    cfg: OracleConfig
    seed: int = 0
    exhaustive_max: int = 7
    random_count: int = 500
    _graphs: list[tuple[Graph, bool]] | None = None

    def graphs(self) -> list[tuple[Graph, bool]]:
        if self._graphs is None:
            out = []
            for n in range(1, self.exhaustive_max + 1):
                out += [(g, oracle_is_circle(g, self.cfg)) for g in enumerate_split_graphs(n)]
            rng = random.Random(self.seed)
            for _ in range(self.random_count):
                g = random_split_graph(rng, rng.choice((8, 9)))
                out.append((g, oracle_is_circle(g, self.cfg)))
            self._graphs = out
        return self._graphs


def _timed(number: int, title: str, fn: Callable[[CheckResult], None]) -> CheckResult:
    res = CheckResult(number, title, True)
    t = time.perf_counter()
    fn(res)
    res.seconds = time.perf_counter() - t
    res.passed = not res.failures
    return res


def check_characterization(suite: Suite) -> CheckResult:
    def run(res: CheckResult) -> None:
        for g, truth in suite.graphs():
            res.checked += 1
            got = recognize(g, want_model=False).status == "Circle"
            if got != truth:
                res.failures.append(f"{g!r}: recognized {got}, oracle {truth}")

    return _timed(1, "recognize agrees with the circle oracle", run)


def check_obstruction_soundness(suite: Suite, kmax: int = 10) -> CheckResult:
    def run(res: CheckResult) -> None:
        for mb in fsc_members(9):
            res.checked += 1
            if oracle_is_circle(mb.graph, suite.cfg):
                res.failures.append(f"{mb.label} is circle")
        for fam in ("OddSunCenter", "EvenSun"):
            for k in range(3, kmax + 1):
                try:
                    mb = make_fsc(fam, k)
                except InvalidParameter:
                    continue
                res.checked += 1
                if not script_reaches_target(mb, reduction_script(mb)):
                    res.failures.append(f"script for {mb.label} misses its target")

    return _timed(2, "catalog members are non-circle; reduction scripts reach their targets", run)


def _catalog_matrices(kmax: int) -> list[tuple[str, list[list[int]]]]:
    out = []
    for fam in FAMILIES:
        ks = range(3, kmax + 1) if fam in PARAMETRIC else [None]
        for k in ks:
            try:
                out.append((f"{fam}({k})" if k else fam, fsc_matrix(fam, k)))
            except InvalidParameter:
                continue
    return out


def _plain(mat: list[list[int]]) -> EnrichedMatrix:
    return EnrichedMatrix.from_rows([("U", None, "".join(map(str, r))) for r in mat])


def check_minimality(suite: Suite, kmax: int = 8) -> CheckResult:
    def run(res: CheckResult) -> None:
        for mb in fsc_members(9):
            for v in range(mb.graph.n):
                res.checked += 1
                if not oracle_is_circle(delete_vertex(mb.graph, v), suite.cfg):
                    res.failures.append(f"{mb.label} minus {v} is not circle")
        mats = [(name, _plain(mat)) for name, mat in _catalog_matrices(kmax)]
        for (n1, a), (n2, b) in itertools.permutations(mats, 2):
            res.checked += 1
            pat = MatrixPattern(n1, None, None, False, a)
            if find_subconfiguration(b, pat) is not None:
                res.failures.append(f"{n1} is a subconfiguration of {n2}")

    return _timed(3, "members are minimal and no member matrix contains another", run)


def random_enriched(rng: random.Random, max_rows: int, max_cols: int) -> EnrichedMatrix:
    """Random enriched matrix obeying the coloring rules."""
    n, m = rng.randint(1, max_rows), rng.randint(1, max_cols)
    empty_color = rng.choice(("red", "blue"))
    spec = []
    for _ in range(n):
        lab = rng.choice(("U", "U", "L", "R", "LR"))
        row = "".join(rng.choice("01") for _ in range(m))
        col = None
        if lab in ("L", "R") and rng.random() < 0.6:
            col = rng.choice(("red", "blue"))
        if lab == "LR" and "1" not in row and rng.random() < 0.5:
            col = empty_color
        spec.append((lab, col, row))
    return EnrichedMatrix.from_rows(spec)


def check_2nested_engine(suite: Suite, samples: int = 500) -> CheckResult:
    def run(res: CheckResult) -> None:
        for pat in catalog_patterns(9, suite.cfg.matrix_cap, include_suspect=True):
            a = pat.matrix
            res.checked += 1
            fast = is_2nested(a)[0] is not None
            slow = oracle_is_2nested(a, suite.cfg)[0]
            if fast != slow:
                res.failures.append(f"{pat.name}: engine {fast}, oracle {slow}")
            elif fast:
                res.failures.append(f"{pat.name} is 2-nested")
        rng = random.Random(suite.seed + 4)
        for _ in range(samples):
            a = random_enriched(rng, 4, 5)
            res.checked += 1
            fast = is_2nested(a)[0] is not None
            if fast != oracle_is_2nested(a, suite.cfg)[0]:
                res.failures.append(f"random matrix disagrees: {a!r}")

    return _timed(4, "2-nested engine matches the oracle; catalog matrices all fail", run)


def check_nested_engine(suite: Suite, samples: int = 500) -> CheckResult:
    def run(res: CheckResult) -> None:
        rng = random.Random(suite.seed + 5)
        for _ in range(samples):
            n, m = rng.randint(1, 5), rng.randint(1, 6)
            rows = [rng.getrandbits(m) for _ in range(n)]
            res.checked += 1
            ok, wit = is_nested(rows)
            if ok != oracle_is_nested(rows, m, suite.cfg):
                res.failures.append(f"rows {rows} disagree")
                continue
            if not ok:
                i, j, (x, y, z) = wit
                a, b = rows[i], rows[j]
                if not ((a >> x) & 1 and not (b >> x) & 1 and (a >> y) & (b >> y) & 1 and (b >> z) & 1 and not (a >> z) & 1):
                    res.failures.append(f"bad gem witness for {rows}")

    return _timed(5, "nested engine matches the oracle with valid gem witnesses", run)


def check_models(suite: Suite) -> CheckResult:
    def run(res: CheckResult) -> None:
        for g, truth in suite.graphs():
            if not truth:
                continue
            v = recognize(g)
            res.checked += 1
            if v.model is None or interlacement(v.model) != g:
                res.failures.append(f"model mismatch for {g!r}")

    return _timed(6, "model interlacement equals the input graph", run)


def check_local_complementation(suite: Suite, nmax: int = 6) -> CheckResult:
    def run(res: CheckResult) -> None:
        for n in range(1, nmax + 1):
            for g in enumerate_graphs(n):
                base = oracle_is_circle(g, suite.cfg)
                for u in range(n):
                    res.checked += 1
                    if oracle_is_circle(local_complement(g, u), suite.cfg) != base:
                        res.failures.append(f"{g!r} changes at {u}")

    return _timed(7, "circle verdict invariant under local complementation", run)


def _decompositions(g: Graph, a: Analysis):
    """Every (graph, decomposition) pair produced while analysing ``g``."""
    d = a.decomposition
    if d is None:
        return
    yield g, d
    for h, f in zip((d.g1, d.g2), a.factors):
        yield from _decompositions(h, f)


def check_decompositions(suite: Suite, factor_max: int = 8) -> CheckResult:
    def run(res: CheckResult) -> None:
        for g, _ in suite.graphs():
            for h, d in _decompositions(g, analyze(g)):
                res.checked += 1
                if not are_isomorphic(recompose(d), h):
                    res.failures.append(f"recomposition differs for {h!r}")
                if d.g1.n <= factor_max and d.g2.n <= factor_max:
                    both = oracle_is_circle(d.g1, suite.cfg) and oracle_is_circle(d.g2, suite.cfg)
                    if oracle_is_circle(h, suite.cfg) != both:
                        res.failures.append(f"factor verdicts disagree for {h!r}")

    return _timed(8, "split decompositions recompose and preserve circularity", run)


CHECKS = (
    check_characterization,
    check_obstruction_soundness,
    check_minimality,
    check_2nested_engine,
    check_nested_engine,
    check_models,
    check_local_complementation,
    check_decompositions,
)


def run_all(cfg: OracleConfig | None = None, seed: int = 0) -> list[CheckResult]:
    suite = Suite(cfg or OracleConfig.from_env(), seed)
    return [check(suite) for check in CHECKS]
