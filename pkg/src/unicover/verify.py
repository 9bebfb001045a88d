"""Independent re-verification of serialized artifacts.

Verification never calls the construction pipelines: it rebuilds every claim
from the raw JSON fields (graph, terms, coefficients, bounds) and checks them
with exact arithmetic, so a certificate produced elsewhere is accepted or
rejected on its own merits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import GraphError, Multigraph, classify, multiset_weight, validate_structure
from .approx import ApproxResult
from .covers import CoverError, check_certificate
from .decompose import DecompositionError, verify_combination
from .lp import membership, solve_subtour

ZERO = Fraction(0)


@dataclass(frozen=True)
class VerifyReport:
    kind: str
    ok: bool
    detail: str = ""


class VerifyError(GraphError):
    pass


def verify_document(doc: dict) -> VerifyReport:
    from . import serialize
    kind = doc.get("type")
    if kind == "uniform-cover-certificate":
        G, cert = serialize.certificate_from_json(doc)
        try:
            check_certificate(G, cert)
        except (CoverError, GraphError) as exc:
            return VerifyReport(kind, False, str(exc))
        return VerifyReport(kind, True, f"variant {cert.variant} on n={G.n}")
    if kind == "approx-result":
        G, res = serialize.approx_from_json(doc)
        try:
            _check_approx(G, res)
        except (VerifyError, GraphError) as exc:
            return VerifyReport(kind, False, str(exc))
        return VerifyReport(kind, True, f"{res.algorithm} weight {res.weight}")
    if kind == "decomposition":
        G = serialize.graph_from_json(doc["graph"])
        comb = serialize.combination_from_json(doc["combination"])
        try:
            verify_combination(G, comb)
            for t in comb.terms:
                if t.labels != frozenset(classify(G, t.multiset())):
                    raise DecompositionError("stored term labels disagree with the classifier")
        except (DecompositionError, GraphError) as exc:
            return VerifyReport(kind, False, str(exc))
        return VerifyReport(kind, True, f"{len(comb.terms)} terms, {comb.relation}")
    if kind == "lp-result":
        G = serialize.graph_from_json(doc["graph"])
        value = serialize.parse_frac(doc["value"])
        x = serialize.vector_from_json(doc["x"])
        weight = {e.id: e.weight for e in G.edges}
        total = sum((weight[eid] * v for eid, v in x.items()), ZERO)
        if total != value:
            return VerifyReport(kind, False, f"objective {total} != stored {value}")
        check = membership(G, x, "subtour")
        if not check.inside:
            return VerifyReport(kind, False, f"optimizer infeasible: {check.detail}")
        return VerifyReport(kind, True, f"value {value}")
    if kind == "cycle-cover":
        G = serialize.graph_from_json(doc["graph"])
        try:
            _check_cycle_cover(G, doc)
        except (VerifyError, GraphError) as exc:
            return VerifyReport(kind, False, str(exc))
        return VerifyReport(kind, True, f"{len(doc['cycles'])} cycles")
    return VerifyReport(str(kind), False, f"unknown document type {kind!r}")


def _expected_ratio(res: ApproxResult) -> Optional[Fraction]:
    fixed = {
        "tsp75": Fraction(7, 5),
        "twoec1310": Fraction(13, 10),
        "bip43": Fraction(4, 3),
        "bip54": Fraction(5, 4),
    }
    if res.algorithm in fixed:
        return fixed[res.algorithm]
    if res.beta is None:
        return None
    if res.algorithm == "twoecbeta":
        return (1 + 2 * res.beta) / 3
    if res.algorithm == "tspbeta":
        return 1 + res.beta / 3
    return None


def _check_approx(G: Multigraph, res: ApproxResult) -> None:
    sol = res.solution_multiset()
    if any(m <= 0 for m in sol.values()):
        raise VerifyError("nonpositive multiplicity in the solution")
    weight = multiset_weight(G, sol)
    if weight != res.weight:
        raise VerifyError(f"solution weighs {weight}, not the stored {res.weight}")
    labels = classify(G, sol)
    if res.object_class not in labels:
        raise VerifyError(f"solution is not a {res.object_class}")
    want = _expected_ratio(res)
    if want is None:
        raise VerifyError(f"unknown algorithm {res.algorithm!r}")
    if res.ratio != want:
        raise VerifyError(f"ratio {res.ratio} does not match the algorithm's {want}")
    if res.profile is not None:
        report = validate_structure(G, res.profile)
        if not report.passed:
            raise VerifyError(f"profile {res.profile} fails: {report.violation}")
    z = solve_subtour(G).value
    if res.lower_bound != z:
        raise VerifyError(f"stored lower bound {res.lower_bound} != LP optimum {z}")
    if res.beta is not None and res.beta != G.total_weight() / z:
        raise VerifyError("stored beta does not match w(E)/z")
    if weight > res.ratio * z:
        raise VerifyError(f"weight {weight} exceeds {res.ratio} * {z}")


def _check_cycle_cover(G: Multigraph, doc: dict) -> None:
    from .graph import enumerate_cuts_upto, multiset_degrees
    cover = {int(eid): 1 for eid in doc["cover"]}
    ids = set(G.edge_ids())
    if not set(cover) <= ids:
        raise VerifyError("cover uses unknown edge ids")
    deg = multiset_degrees(G, cover)
    if any(d != 2 for d in deg):
        raise VerifyError("cover is not a union of cycles through every vertex")
    matching = sorted(ids - set(cover))
    if matching != [int(e) for e in doc["matching"]]:
        raise VerifyError("stored matching is not the cover's complement")
    for c in enumerate_cuts_upto(G, 4).cuts:
        if c.size in (3, 4) and len(c.edge_ids & set(cover)) < 2:
            raise VerifyError(f"cut of size {c.size} not doubly covered")
