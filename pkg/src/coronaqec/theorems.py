"""Closed-form QEC of corona graphs and its verification against the oracle.

For a pair (G, H) the engine evaluates every known sufficient condition for

    QEC(G ⊙ H) = psi_H*^{-1}(QEC(G))

(or for QEC(G ⊙ H) = 0), reports all that hold, predicts the value, and,
in :func:`verify_pair`, compares the prediction with the brute-force
constrained eigenvalue computed on the whole corona.

Result tags:

``T4.9``   cond (i), min ev(A_H) >= -2, QEC(G) >= 0
``T4.10``  cond (i), min ev(A_H) > -sqrt 2
``T4.11``  -2 - psi^{-1}(QEC(G)) < min ev(A_H)
``T4.13``  H kappa-regular, cond (i), -2 - min ev(A_H) <= -(kappa+2)/(n+1)
``T4.16``  H regular with min ev(A_H) = -2; value 0 when QEC(G) <= 0
``P2.3``   QEC(G) = 0 and QEC(K_1+H) <= 0, or QEC(G) <= 0 and QEC(K_1+H) = 0

Condition (i) is ``-2 - psi^{-1}(QEC(G))`` not an eigenvalue of A_H.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from .errors import FormulaNotEstablished, PreconditionError
from .graph import (
    Graph,
    complete,
    corona_distance_matrix,
    cycle,
    disjoint_union,
    distance_matrix,
    empty,
    join_k1,
    make_family,
    path,
)
from .omega_psi import OmegaPsi, psi_inverse_regular_closed_form
from .qec import QecResult, qec_oracle
from .spectral import DEFAULT_GROUP_TOL, DEFAULT_MAIN_TOL, SpectralData

TAGS = ("T4.9", "T4.10", "T4.11", "T4.13", "T4.16", "P2.3")
P4_QEC = -2.0 + math.sqrt(2.0)
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Tolerances:
    group_tol: float = DEFAULT_GROUP_TOL
    main_tol: float = DEFAULT_MAIN_TOL
    # condition (i) is true above this distance to the spectrum, false below group_tol
    eigen_excl_tol: float = 1e-6
    # |QEC| below this counts as exactly zero; also the slack on threshold comparisons
    zero_tol: float = 1e-9
    agree_tol: float = 1e-9
    verify_tol: float = 1e-7
    bound_tol: float = 1e-9

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Condition:
    """A predicate with its distance to the threshold.

    ``holds`` is None when the margin falls in the indeterminate zone.
    """

    holds: bool | None
    margin: float | None = None

    def to_dict(self) -> dict:
        return {"holds": self.holds, "margin": self.margin}


@dataclass
class TheoremReport:
    g: Graph
    h: Graph
    g_qec: float
    k1_join_qec: float
    h_spectrum: SpectralData
    omega_psi: OmegaPsi
    psi_inv_value: float
    regular_degree: int | None
    conditions: dict[str, Condition]
    applicable: list[str]
    gamma3_upper_bound: float
    tags: list[str] = field(default_factory=list)
    predictions: dict[str, float] = field(default_factory=dict)
    predicted: float | None = None
    oracle: QecResult | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def indeterminate(self) -> bool:
        return self.conditions["cond_i_not_eigen"].holds is None

    @property
    def deviation(self) -> float | None:
        if self.predicted is None or self.oracle is None:
            return None
        return abs(self.predicted - self.oracle.value)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def status(self) -> str:
        if self.checks and not self.passed:
            return "fail"
        if self.indeterminate:
            return "indeterminate"
        if not self.applicable:
            return "not-established"
        return "pass" if self.oracle is not None else "predicted"

    def to_dict(self) -> dict:
        return {
            "g": self.g.label,
            "h": self.h.label,
            "g_n": self.g.n,
            "h_n": self.h.n,
            "g_qec": self.g_qec,
            "k1_join_qec": self.k1_join_qec,
            "h_spectrum": self.h_spectrum.to_dict(),
            "main_eigenvalues": list(self.omega_psi.main.values),
            "lambda_star": self.omega_psi.lambda_star if self.omega_psi.zeros else None,
            "psi_inv_value": self.psi_inv_value,
            "regular_degree": self.regular_degree,
            "conditions": {k: c.to_dict() for k, c in self.conditions.items()},
            "applicable": list(self.applicable),
            "predictions": dict(self.predictions),
            "predicted": self.predicted,
            "gamma3_upper_bound": self.gamma3_upper_bound,
            "oracle": None if self.oracle is None else self.oracle.value,
            "deviation": self.deviation,
            "checks": dict(self.checks),
            "tags": list(self.tags),
            "status": self.status,
        }


def _is_odd_cycle_union(h: Graph) -> bool:
    """H is a disjoint union of cycles, at least one of odd length >= 5."""
    if h.regular_degree() != 2:
        return False
    return any(len(c) % 2 == 1 and len(c) >= 5 for c in h.components())


def _graph_qec(g: Graph) -> float:
    return qec_oracle(distance_matrix(g)).value


def check_conditions(g: Graph, h: Graph, tols: Tolerances = Tolerances()) -> TheoremReport:
    """Evaluate the hypotheses of every corona theorem for (G, H)."""
    if g.n < 2:
        raise PreconditionError("G must have at least two vertices")
    if h.n < 1:
        raise PreconditionError("H must have at least one vertex")
    g_qec = _graph_qec(g)  # raises DisconnectedGraphError for disconnected G
    k1_join_qec = _graph_qec(join_k1(h))
    op = OmegaPsi.from_graph(h, tols.group_tol, tols.main_tol)
    sd = op.spectrum
    min_ev = sd.min_eig
    psi_inv = op.psi_inv(g_qec)
    kappa = h.regular_degree()
    z = tols.zero_tol

    x = -2.0 - psi_inv
    dist = sd.distance_to_spectrum(x)
    if dist > tols.eigen_excl_tol:
        cond_i = Condition(True, dist)
    elif dist <= tols.group_tol:
        cond_i = Condition(False, dist)
    else:
        cond_i = Condition(None, dist)

    conds = {
        "cond_i_not_eigen": cond_i,
        "min_ev_ge_minus2": Condition(min_ev + 2.0 >= -z, min_ev + 2.0),
        "g_qec_ge_0": Condition(g_qec >= -z, g_qec),
        "g_qec_gt_0": Condition(g_qec > z, g_qec),
        "g_qec_eq_0": Condition(abs(g_qec) <= z, g_qec),
        "g_qec_le_0": Condition(g_qec <= z, g_qec),
        "min_ev_gt_neg_sqrt2": Condition(min_ev + SQRT2 > z, min_ev + SQRT2),
        "strict_min_ev_dominance": Condition(min_ev - x > z, min_ev - x),
        "regular": Condition(kappa is not None, None),
        "min_ev_eq_minus2": Condition(abs(min_ev + 2.0) <= tols.group_tol, min_ev + 2.0),
        "k1_join_qec_le_0": Condition(k1_join_qec <= z, k1_join_qec),
        "k1_join_qec_eq_0": Condition(abs(k1_join_qec) <= z, k1_join_qec),
    }
    if kappa is not None:
        # -2 - min ev <= -(kappa+2)/(n+1)
        margin = -(kappa + 2.0) / (h.n + 1) - (-2.0 - min_ev)
        conds["regular_lambda_star_bound"] = Condition(margin >= -z, margin)
    else:
        conds["regular_lambda_star_bound"] = Condition(False, None)

    def holds(name):
        return conds[name].holds is True

    applicable = []
    if holds("cond_i_not_eigen") and holds("min_ev_ge_minus2") and holds("g_qec_ge_0"):
        applicable.append("T4.9")
    if holds("cond_i_not_eigen") and holds("min_ev_gt_neg_sqrt2"):
        applicable.append("T4.10")
    if holds("strict_min_ev_dominance"):
        applicable.append("T4.11")
    if holds("regular") and holds("cond_i_not_eigen") and holds("regular_lambda_star_bound"):
        applicable.append("T4.13")
    if holds("regular") and holds("min_ev_eq_minus2"):
        applicable.append("T4.16")
    if (holds("g_qec_eq_0") and holds("k1_join_qec_le_0")) or (
        holds("g_qec_le_0") and holds("k1_join_qec_eq_0")
    ):
        applicable.append("P2.3")

    tags = []
    if _is_odd_cycle_union(h):
        tags.append("open-in-paper")
    if cond_i.holds is None:
        tags.append("indeterminate")
    if cond_i.holds is False and (
        (holds("min_ev_ge_minus2") and holds("g_qec_ge_0"))
        or (holds("regular") and holds("regular_lambda_star_bound"))
    ):
        # remaining hypotheses of T4.9 or T4.13 hold; only condition (i) fails
        tags.append("cond-i-only-failure")
    if op.main.near_minus_two:
        tags.append("near-minus-two")

    return TheoremReport(
        g=g,
        h=h,
        g_qec=g_qec,
        k1_join_qec=k1_join_qec,
        h_spectrum=sd,
        omega_psi=op,
        psi_inv_value=psi_inv,
        regular_degree=kappa,
        conditions=conds,
        applicable=applicable,
        gamma3_upper_bound=-min_ev - 2.0,
        tags=tags,
    )


def predict_qec(report: TheoremReport, tols: Tolerances = Tolerances()) -> float:
    """Fill ``report.predictions`` for each applicable theorem and return the prediction.

    Regular H uses the quadratic closed form, other H the numeric inverse.
    Raises :class:`FormulaNotEstablished` when no theorem applies.
    """
    if not report.applicable:
        raise FormulaNotEstablished(
            f"formula not established for ({report.g.label}, {report.h.label}): no theorem hypotheses hold"
        )
    kappa = report.regular_degree
    if kappa is not None:
        inv = psi_inverse_regular_closed_form(report.h.n, kappa, report.g_qec)
    else:
        inv = report.psi_inv_value
    preds = {}
    for tag in report.applicable:
        if tag in ("T4.9", "T4.10", "T4.11", "T4.13"):
            preds[tag] = inv
        elif tag == "T4.16":
            preds[tag] = inv if report.conditions["g_qec_gt_0"].holds else 0.0
        elif tag == "P2.3":
            preds[tag] = 0.0
    report.predictions = preds
    report.predicted = preds[report.applicable[0]]
    values = list(preds.values())
    report.checks["theorems_agree"] = max(values) - min(values) <= tols.agree_tol
    return report.predicted


def verify_pair(g: Graph, h: Graph, tols: Tolerances = Tolerances(), size_cap: int = 400) -> TheoremReport:
    """Check conditions, predict, and compare with the oracle on the full corona."""
    size = g.n * (1 + h.n)
    if size > size_cap:
        raise PreconditionError(f"corona has {size} vertices, above the cap of {size_cap}")
    report = check_conditions(g, h, tols)
    if report.applicable:
        predict_qec(report, tols)
    d = corona_distance_matrix(g, h)
    label = f"({g.label})o({h.label})" if g.label and h.label else None
    oracle = qec_oracle(d, label)
    report.oracle = oracle
    q = oracle.value
    t = tols.bound_tol

    if report.predicted is not None:
        report.checks["formula"] = abs(report.predicted - q) <= tols.verify_tol
    report.checks["lower_bound"] = q >= max(P4_QEC, report.g_qec, report.k1_join_qec) - t
    if report.conditions["cond_i_not_eigen"].holds:
        report.checks["psi_inv_lower_bound"] = q >= report.psi_inv_value - t
        report.checks["gamma3_upper_bound"] = q <= max(report.psi_inv_value, report.gamma3_upper_bound) + t
    if g.n >= 2 and h.n >= 2:
        report.checks["above_p4"] = q > P4_QEC + t
    return report


# -- batch harness -------------------------------------------------------------

def random_connected_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    order = rng.permutation(n)
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(i)])))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, sorted(edges))


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_pairs(count: int, seed: int, gmax: int = 6, hmax: int = 4) -> list[tuple[Graph, Graph]]:
    """Seeded pairs: G connected on 2..gmax vertices, H arbitrary on 1..hmax vertices."""
    rng = np.random.default_rng(seed)
    pairs = []
    for idx in range(count):
        gn = int(rng.integers(2, gmax + 1))
        hn = int(rng.integers(1, hmax + 1))
        g = random_connected_graph(rng, gn, float(rng.uniform(0.1, 0.9))).with_label(f"G{idx}")
        h = random_graph(rng, hn, float(rng.uniform(0.0, 1.0))).with_label(f"H{idx}")
        pairs.append((g, h))
    return pairs


@dataclass
class BatchSummary:
    total: int = 0
    per_tag: dict[str, dict[str, int]] = field(default_factory=lambda: {t: {"pass": 0, "fail": 0} for t in TAGS})
    applicable_pairs: int = 0
    not_established: int = 0
    failures: list[dict] = field(default_factory=list)
    indeterminate: list[dict] = field(default_factory=list)
    cond_i_only_failures: list[dict] = field(default_factory=list)
    open_in_paper: int = 0
    worst_deviation: float = 0.0
    reports: list[TheoremReport] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, rep: TheoremReport, tols: Tolerances):
        self.total += 1
        self.reports.append(rep)
        brief = {"g": rep.g.label, "h": rep.h.label, "g_edges": [list(e) for e in rep.g.edges],
                 "h_n": rep.h.n, "h_edges": [list(e) for e in rep.h.edges]}
        if "open-in-paper" in rep.tags:
            self.open_in_paper += 1
        if "cond-i-only-failure" in rep.tags:
            self.cond_i_only_failures.append(brief)
        if rep.indeterminate:
            self.indeterminate.append({**brief, "margin": rep.conditions["cond_i_not_eigen"].margin})
        elif rep.applicable:
            self.applicable_pairs += 1
            for tag, value in rep.predictions.items():
                dev = abs(value - rep.oracle.value)
                self.worst_deviation = max(self.worst_deviation, dev)
                self.per_tag[tag]["pass" if dev <= tols.verify_tol else "fail"] += 1
        else:
            self.not_established += 1
        if not rep.passed:
            self.failures.append({**brief, "checks": dict(rep.checks), "predicted": rep.predicted,
                                  "oracle": rep.oracle.value})

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "applicable_pairs": self.applicable_pairs,
            "not_established": self.not_established,
            "per_tag": self.per_tag,
            "worst_deviation": self.worst_deviation,
            "failures": self.failures,
            "indeterminate": self.indeterminate,
            "cond_i_only_failures": self.cond_i_only_failures,
            "open_in_paper": self.open_in_paper,
            "ok": self.ok,
        }


def _verify_args(args):
    g, h, tols, cap = args
    return verify_pair(g, h, tols, cap)


def verify_many(pairs: Iterable[tuple[Graph, Graph]], tols: Tolerances = Tolerances(),
                size_cap: int = 400, workers: int = 1) -> BatchSummary:
    jobs = [(g, h, tols, size_cap) for g, h in pairs]
    summary = BatchSummary()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_verify_args, jobs, chunksize=16))
    else:
        reports = [_verify_args(j) for j in jobs]
    for rep in reports:
        summary.add(rep, tols)
    return summary


def batch_verify(count: int = 200, seed: int = 42, gmax: int = 6, hmax: int = 4,
                 tols: Tolerances = Tolerances(), size_cap: int = 400, workers: int = 1) -> BatchSummary:
    """Verify ``count`` seeded random pairs. The result does not depend on ``workers``."""
    return verify_many(random_pairs(count, seed, gmax, hmax), tols, size_cap, workers)


# -- fixed corpus of the worked example families -----------------------------------

def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, [(u, p + v) for u in range(p) for v in range(q)], f"K{p},{q}")


def example_corpus() -> list[tuple[Graph, Graph]]:
    """(G, H) pairs covering every worked example family with a closed form."""
    gs = [complete(2), complete(3), complete(4), path(3), path(4), cycle(4), cycle(5),
          complete_bipartite(1, 3), complete_bipartite(2, 3)]
    hs = []
    hs += [empty(n) for n in range(1, 5)]                       # G ⊙ E_n, double stars
    hs += [make_family("disjoint-union-of-completes", pq)       # G ⊙ pK_q, G ⊙ K_n
           for pq in ([1, 1], [1, 2], [2, 2], [3, 2], [1, 3], [2, 3], [1, 4])]
    hs += [cycle(4), cycle(6), disjoint_union(cycle(4), cycle(4), label="2C4")]  # even pC_q
    for p1, q1, p2, q2 in ((1, 1, 1, 2), (2, 1, 1, 2), (1, 1, 1, 3), (1, 2, 1, 3), (2, 1, 1, 3)):
        parts = [complete(q1)] * p1 + [complete(q2)] * p2
        hs.append(disjoint_union(*parts, label=f"{p1}K{q1}u{p2}K{q2}"))
    pairs = [(g, h) for g in gs for h in hs]
    pairs += [(complete(m), complete(1)) for m in range(5, 7)]  # bearded complete graphs
    return pairs
