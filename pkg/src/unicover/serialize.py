"""Text and JSON formats.

Graph text format: first line "n m", then m lines "u v p/q [mult]" with
0-based endpoints and an exact rational weight; a multiplicity k expands to k
parallel edges.  Node-weight files hold one rational per line.  JSON carries
every rational as a lowest-terms string "p/q" so no consumer ever rounds.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import (Cut, Edge, EdgeMultiset, EdgeVector, GraphError, Multigraph,
                    NodeWeights)
from .decompose import ConvexCombination, Term
from .lp import LpResult
from .cyclecover import CycleCoverResult
from .covers import Certificate
from .approx import ApproxResult


class ParseError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def frac_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_frac(text: str, line: Optional[int] = None) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text.strip()!r}", line)


# ---------------------------------------------------------------------------
# Text formats


def graph_to_text(G: Multigraph) -> str:
    lines = [f"{G.n} {G.m}"]
    for e in sorted(G.edges, key=lambda e: e.id):
        lines.append(f"{e.u} {e.v} {frac_str(e.weight)}")
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Multigraph:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing header", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must be two integers", 1)
    edges: List[Edge] = []
    row = 0
    for ln, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) not in (3, 4):
            raise ParseError("edge line must be 'u v p/q [mult]'", ln)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("endpoints must be integers", ln)
        w = parse_frac(parts[2], ln)
        mult = 1
        if len(parts) == 4:
            try:
                mult = int(parts[3])
            except ValueError:
                raise ParseError("multiplicity must be an integer", ln)
            if mult < 1:
                raise ParseError("multiplicity must be positive", ln)
        for _ in range(mult):
            edges.append(Edge(u, v, w, row))
            row += 1
    if row != m:
        raise ParseError(f"expected {m} edges, found {row}")
    try:
        return Multigraph(n, tuple(edges))
    except GraphError as exc:
        raise ParseError(str(exc))


def weights_to_text(f: NodeWeights) -> str:
    return "\n".join(frac_str(v) for v in f.f) + "\n"


def weights_from_text(text: str, n: Optional[int] = None) -> NodeWeights:
    values = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        if raw.strip():
            values.append(parse_frac(raw, ln))
    if n is not None and len(values) != n:
        raise ParseError(f"expected {n} node weights, found {len(values)}")
    try:
        return NodeWeights(tuple(values))
    except GraphError as exc:
        raise ParseError(str(exc))


# ---------------------------------------------------------------------------
# JSON


def vector_to_json(x: EdgeVector) -> Dict[str, str]:
    return {str(eid): frac_str(v) for eid, v in sorted(x.items())}


def vector_from_json(obj: Dict[str, str]) -> EdgeVector:
    return {int(k): parse_frac(v) for k, v in obj.items()}


def graph_to_json(G: Multigraph) -> dict:
    return {
        "n": G.n,
        "edges": [[e.u, e.v, frac_str(e.weight), e.id]
                  for e in sorted(G.edges, key=lambda e: e.id)],
    }


def graph_from_json(obj: dict) -> Multigraph:
    try:
        edges = tuple(Edge(int(u), int(v), parse_frac(w), int(eid))
                      for u, v, w, eid in obj["edges"])
        return Multigraph(int(obj["n"]), edges)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph object: {exc}")


def combination_to_json(comb: ConvexCombination) -> dict:
    return {
        "relation": comb.relation,
        "target": {str(eid): frac_str(v) for eid, v in comb.target},
        "terms": [{
            "lambda": frac_str(t.coefficient),
            "edges": [[eid, m] for eid, m in t.edges],
            "classes": sorted(t.labels),
        } for t in comb.terms],
    }


def combination_from_json(obj: dict) -> ConvexCombination:
    try:
        terms = tuple(
            Term(parse_frac(t["lambda"]),
                 tuple((int(eid), int(m)) for eid, m in t["edges"]),
                 frozenset(t.get("classes", ())))
            for t in obj["terms"])
        target = tuple(sorted((int(k), parse_frac(v))
                              for k, v in obj["target"].items()))
        return ConvexCombination(terms, target, obj["relation"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad combination object: {exc}")


def lp_result_to_json(G: Multigraph, res: LpResult) -> dict:
    return {
        "type": "lp-result",
        "graph": graph_to_json(G),
        "value": frac_str(res.value),
        "x": vector_to_json(res.x),
        "cuts": [{"shore": list(c.shore), "edges": sorted(c.edge_ids)}
                 for c in res.cuts],
        "separation_rounds": res.separation_rounds,
    }


def cycle_cover_to_json(G: Multigraph, res: CycleCoverResult) -> dict:
    return {
        "type": "cycle-cover",
        "graph": graph_to_json(G),
        "cover": list(res.cover),
        "cycles": [list(c) for c in res.cycles],
        "matching": list(res.matching),
        "intra_cycle": list(res.intra_cycle),
        "cross_cycle": list(res.cross_cycle),
        "covered_cuts": [[sorted(ids), count] for ids, count in res.covered_cuts],
    }


def decomposition_to_json(G: Multigraph, comb: ConvexCombination, kind: str) -> dict:
    return {
        "type": "decomposition",
        "kind": kind,
        "graph": graph_to_json(G),
        "combination": combination_to_json(comb),
    }


def certificate_to_json(G: Multigraph, cert: Certificate) -> dict:
    return {
        "type": "uniform-cover-certificate",
        "graph": graph_to_json(G),
        "variant": cert.variant,
        "profile": cert.profile,
        "alpha": frac_str(cert.alpha),
        "object_class": cert.object_class,
        "combination": combination_to_json(cert.combination),
        "slack": {str(eid): frac_str(v) for eid, v in cert.slack},
        "max_multiplicity": cert.max_multiplicity,
        "metadata": {k: v for k, v in cert.metadata},
    }


def certificate_from_json(obj: dict) -> Tuple[Multigraph, Certificate]:
    try:
        G = graph_from_json(obj["graph"])
        cert = Certificate(
            variant=obj["variant"],
            profile=obj["profile"],
            alpha=parse_frac(obj["alpha"]),
            object_class=obj["object_class"],
            combination=combination_from_json(obj["combination"]),
            slack=tuple(sorted((int(k), parse_frac(v))
                               for k, v in obj["slack"].items())),
            max_multiplicity=int(obj["max_multiplicity"]),
            metadata=tuple(sorted(obj.get("metadata", {}).items())),
        )
        return G, cert
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad certificate object: {exc}")


def approx_to_json(G: Multigraph, res: ApproxResult) -> dict:
    out = {
        "type": "approx-result",
        "graph": graph_to_json(G),
        "algorithm": res.algorithm,
        "solution": [[eid, m] for eid, m in res.solution],
        "weight": frac_str(res.weight),
        "lower_bound": frac_str(res.lower_bound),
        "ratio": frac_str(res.ratio),
        "object_class": res.object_class,
    }
    if res.beta is not None:
        out["beta"] = frac_str(res.beta)
    if res.profile is not None:
        out["profile"] = res.profile
    return out


def approx_from_json(obj: dict) -> Tuple[Multigraph, ApproxResult]:
    try:
        G = graph_from_json(obj["graph"])
        res = ApproxResult(
            algorithm=obj["algorithm"],
            solution=tuple((int(eid), int(m)) for eid, m in obj["solution"]),
            weight=parse_frac(obj["weight"]),
            lower_bound=parse_frac(obj["lower_bound"]),
            ratio=parse_frac(obj["ratio"]),
            object_class=obj["object_class"],
            beta=parse_frac(obj["beta"]) if "beta" in obj else None,
            profile=obj.get("profile"),
        )
        return G, res
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad approx object: {exc}")


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}", exc.lineno)
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    return obj
