"""End-to-end recognition of circle split graphs with verdict serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .catalog import Witness, find_fsc_witness, make_fsc
from .chord import ChordModel
from .errors import ForbiddenFound, InternalInconsistency, InvalidState, NotDecomposable, ParseError
from .graph import Graph, find_induced
from .model import annotate_classes, check_model, find_model
from .partition import (
    CaseMatrices,
    MatrixResult,
    build_case_matrices,
    case_verdict,
    partition_K,
    partition_S,
    Partition,
)
from .split import Decomposition, detect_case, dispatch_net, reduce_co4tent_prime, split_partition


@dataclass
class Analysis:
    """Outcome of the structural test on one graph (possibly via its split factors)."""

    case: str
    circle: bool
    matrices: list[MatrixResult] = field(default_factory=list)
    forbidden: str | None = None
    decomposition: Decomposition | None = None
    factors: tuple[Analysis, ...] = ()
    case_matrices: CaseMatrices | None = None


def _prefixed(results: list[MatrixResult], prefix: str) -> list[MatrixResult]:
    return [MatrixResult(prefix + r.name, r.kind, r.ok, r.reason) for r in results]


def _decomposed(case: str, g: Graph, d: Decomposition) -> Analysis:
    a1, a2 = analyze(d.g1), analyze(d.g2)
    if len(d.g1.adj) >= g.n or len(d.g2.adj) >= g.n:
        raise InternalInconsistency("split factor is not smaller than the graph")
    res = _prefixed(a1.matrices, "f1.") + _prefixed(a2.matrices, "f2.")
    return Analysis(case, a1.circle and a2.circle, res, a1.forbidden or a2.forbidden, d, (a1, a2))


def analyze(g: Graph) -> Analysis:
    """Decide circularity of a split graph through the anchor case analysis.

    Net graphs are either sent to the 4-tent case or split; co-4-tent graphs
    with an empty K2 or K4 are split before their stable side is classified.
    Raises NotSplit for non-split input.
    """
    sp = split_partition(g)
    cw = detect_case(g, sp)
    kind, emb = cw.kind, cw.embedding
    if kind == "None":
        return Analysis("None", True)
    try:
        if kind == "Net":
            try:
                action, payload = dispatch_net(g, sp, emb)
            except NotDecomposable:
                return _net_fallback(g)
            if action == "Decompose":
                return _decomposed("Net", g, payload)
            kind, emb = "FourTent", payload
        K = partition_K(g, sp, kind, emb)
        if kind == "CoFourTent" and (not K[2] or not K[4]):
            try:
                return _decomposed(kind, g, reduce_co4tent_prime(g, sp, K))
            except NotDecomposable:
                pass
        S, isolated = partition_S(g, sp, kind, K)
        cm = build_case_matrices(g, Partition(kind, K, S, isolated))
    except ForbiddenFound as exc:
        return Analysis(kind, False, forbidden=str(exc))
    results = case_verdict(cm)
    return Analysis(kind, all(r.ok for r in results), results, case_matrices=cm)


def _net_fallback(g: Graph) -> Analysis:
    """Net case without a usable split.

    Every forbidden member except MIII3 contains a tent, 4-tent or co-4-tent,
    so here the graph is circle exactly when it has no induced MIII3.
    """
    member = make_fsc("MIII3")
    if find_induced(g, member.graph) is not None:
        return Analysis("Net", False, forbidden="induced MIII3")
    return Analysis("Net", True)


def certificate_order(g: Graph, a: Analysis) -> tuple[int, ...] | None:
    """Clique order read off the suitable orderings of the class matrices."""
    cm = a.case_matrices
    if cm is None:
        return None
    order: list[int] = []
    for i in sorted(cm.classes):
        cols = _class_columns(a, i)
        cert = cm.certificates.get(i)
        if cert is None:
            if len(cols) > 1:
                return None
            order += cols
        else:
            order += [cols[c] for c in cert.ordering]
    return tuple(order)


def _class_columns(a: Analysis, i: int) -> list[int]:
    return list(a.case_matrices.columns[i])


def build_model(g: Graph, a: Analysis) -> ChordModel:
    """Chord model of a graph whose analysis came out circle; checked against ``g``."""
    if not a.circle:
        raise InvalidState("model requested for a graph that is not circle")
    sp = split_partition(g)
    cand = certificate_order(g, a)
    m = find_model(g, sp, [cand] if cand else [])
    if m is None:
        raise InternalInconsistency("no chord model for a graph judged circle")
    check_model(g, m)
    if a.case_matrices is not None:
        cm = a.case_matrices
        m = annotate_classes(m, {v: i for i in cm.classes for v in cm.columns.get(i, ())}, list(cm.classes))
    return m


@dataclass
class Verdict:
    status: str  # Circle, NotCircle or NotSplit
    model: ChordModel | None = None
    witness: Witness | None = None
    case: str | None = None
    matrices: list[MatrixResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.model is not None:
            out["model"] = list(self.model.word)
        if self.witness is not None:
            out["witness"] = {"family": self.witness.family, "k": self.witness.k, "vertices": list(self.witness.vertices)}
        trace = []
        for r in self.matrices:
            item: dict = {"name": r.name, r.kind: r.ok}
            if r.reason is not None:
                item["reason"] = r.reason
            trace.append(item)
        out["trace"] = {"case": self.case, "matrices": trace}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> Verdict:
        try:
            model = ChordModel(tuple(d["model"])) if "model" in d else None
            w = d.get("witness")
            witness = Witness(w["family"], w["k"], tuple(w["vertices"])) if w is not None else None
            results = []
            for item in d["trace"]["matrices"]:
                kind = "twoNested" if "twoNested" in item else "nested"
                results.append(MatrixResult(item["name"], kind, item[kind], item.get("reason")))
            return cls(d["status"], model, witness, d["trace"]["case"], results)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed verdict: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> Verdict:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc


def recognize(g: Graph, want_model: bool = True) -> Verdict:
    """Circle verdict with a model, or a non-circle verdict with a forbidden induced subgraph."""
    a = analyze(g)
    if a.circle:
        return Verdict("Circle", build_model(g, a) if want_model else None, None, a.case, a.matrices)
    return Verdict("NotCircle", None, find_fsc_witness(g), a.case, a.matrices)
