"""Connector repair: make every term of a connector decomposition cross each
2-edge cut an even number of times.

Pipeline: equality decomposition into connectors, multiplicity normalization
(no term holds two copies of an edge while another holds none), then a per
cut-class repair with two cases depending on whether the class has an edge of
fractional value below 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .graph import (EdgeMultiset, EdgeVector, GraphError, Multigraph,
                    connected_components)
from .decompose import (ConvexCombination, DecompositionError, caratheodory_reduce,
                        clip_at_two, decompose_connectors, make_combination)
from .lp import membership

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class TwoCutClass:
    edge_ids: FrozenSet[int]
    kind: str                      # "D1" (all values >= 1) or "D2"
    distinguished: Optional[int]   # the unique sub-1 edge of a D2 class

    def min_id(self) -> int:
        return min(self.edge_ids)


@dataclass(frozen=True)
class TwoCutClasses:
    classes: Tuple[TwoCutClass, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def edge_to_class(self) -> Dict[int, TwoCutClass]:
        out: Dict[int, TwoCutClass] = {}
        for cls in self.classes:
            for eid in cls.edge_ids:
                out[eid] = cls
        return out


def _support_edges(G: Multigraph, x: EdgeVector):
    return [e for e in G.edges if x.get(e.id, ZERO) > 0]


def two_cut_pairs(G: Multigraph, x: EdgeVector) -> List[Tuple[int, int]]:
    """Pairs of support edges whose joint removal disconnects the support."""
    support = _support_edges(G, x)
    if len(connected_components(G.n, ((e.u, e.v) for e in support))) != 1:
        raise GraphError("support is not spanning connected")
    pairs: List[Tuple[int, int]] = []
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            ea, eb = support[a], support[b]
            rest = [(e.u, e.v) for e in support if e.id not in (ea.id, eb.id)]
            comps = connected_components(G.n, rest)
            if len(comps) == 2:
                pairs.append((ea.id, eb.id))
            elif len(comps) > 2:
                raise GraphError("support is not 2-edge-connected")
    return pairs


def two_cut_classes(G: Multigraph, x: EdgeVector) -> TwoCutClasses:
    """Equivalence classes of edges lying in 2-edge cuts, tagged D1 or D2.

    Two edges are related when their removal disconnects the support; the
    relation is transitive on these classes, which is asserted pairwise.
    """
    check = membership(G, x, "subtour")
    if not check.inside:
        raise DecompositionError(f"x is outside the cut polyhedron: {check.detail}", check)
    pairs = two_cut_pairs(G, x)
    ids = sorted({eid for p in pairs for eid in p})
    parent = {eid: eid for eid in ids}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pair_set = {frozenset(p) for p in pairs}
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, Set[int]] = {}
    for eid in ids:
        groups.setdefault(find(eid), set()).add(eid)
    classes = []
    for members in groups.values():
        members_sorted = sorted(members)
        for i, a in enumerate(members_sorted):
            for b in members_sorted[i + 1:]:
                if frozenset((a, b)) not in pair_set:
                    raise GraphError(f"2-cut relation is not transitive on {{e{a},e{b}}}")
        sub_one = [eid for eid in members_sorted if x.get(eid, ZERO) < 1]
        if len(sub_one) > 1:
            raise DecompositionError(
                "two edges of one cut class are below 1; x violates a cut constraint")
        if sub_one:
            classes.append(TwoCutClass(frozenset(members), "D2", sub_one[0]))
        else:
            classes.append(TwoCutClass(frozenset(members), "D1", None))
    classes.sort(key=lambda c: c.min_id())
    return TwoCutClasses(tuple(classes))


def normalize_connectors(family: ConvexCombination, x: EdgeVector,
                         G: Optional[Multigraph] = None) -> ConvexCombination:
    """Rebalance an equality decomposition so that for every edge e, no term
    uses two copies while another uses none.

    Consequences: every term uses e at least once when x_e >= 1, and no term
    uses two copies when x_e < 1.  Terms are split when the two coefficients
    differ; total coverage is unchanged edge by edge.
    """
    if family.relation != "equals":
        raise DecompositionError("normalization needs an equality decomposition")
    terms: List[Tuple[Fraction, EdgeMultiset]] = [
        (t.coefficient, t.multiset()) for t in family.terms]
    limit = (G.m if G is not None else len(x)) + 1
    for eid in sorted(x):
        doubled = [(lam, f) for lam, f in terms if f.get(eid, 0) == 2]
        absent = [(lam, f) for lam, f in terms if f.get(eid, 0) == 0]
        keep = [(lam, f) for lam, f in terms if f.get(eid, 0) == 1]
        while doubled and absent:
            li, fi = doubled[-1]
            lj, fj = absent[-1]
            t = min(li, lj)
            donor = dict(fi)
            donor[eid] = 1
            receiver = dict(fj)
            receiver[eid] = 1
            keep.append((t, donor))
            keep.append((t, receiver))
            doubled.pop()
            absent.pop()
            if li > t:
                doubled.append((li - t, fi))
            if lj > t:
                absent.append((lj - t, fj))
        terms = keep + doubled + absent
        # Re-reducing keeps a subset of the current objects, which preserves
        # the no-2-and-0 invariant on the edges already processed.
        if len(terms) > limit:
            terms = caratheodory_reduce(terms, limit)
    if G is not None:
        return make_combination(G, terms, family.target_vector(), "equals")
    from .decompose import Term
    merged: Dict[Tuple[Tuple[int, int], ...], Fraction] = {}
    for coeff, f in terms:
        key = tuple(sorted((eid, m) for eid, m in f.items() if m > 0))
        merged[key] = merged.get(key, ZERO) + coeff
    out = tuple(Term(coeff, key, frozenset())
                for key, coeff in sorted(merged.items()))
    return ConvexCombination(out, family.target, "equals")


def _term_is_connector(G: Multigraph, f: EdgeMultiset) -> bool:
    if any(m > 2 or m < 0 for m in f.values()):
        return False
    comps = connected_components(G.n, ((e.u, e.v) for e in G.edges if f.get(e.id, 0) > 0))
    return len(comps) == 1


def even_2cut_connectors(G: Multigraph, x: EdgeVector) -> ConvexCombination:
    """Convex combination of connectors dominated by x, each crossing every
    2-edge cut an even number of times."""
    xbar = clip_at_two(x)
    base = decompose_connectors(G, x)
    classes = two_cut_classes(G, x)
    norm = normalize_connectors(base, xbar, G=G)
    if len(classes) == 0:
        return norm
    terms: List[Tuple[Fraction, EdgeMultiset]] = [
        (t.coefficient, t.multiset()) for t in norm.terms]
    for cls in classes.classes:
        members = sorted(cls.edge_ids)
        if cls.kind == "D1":
            for _, f in terms:
                for eid in members:
                    f[eid] = 1
        else:
            e = cls.distinguished
            for _, f in terms:
                if f.get(e, 0) == 1:
                    for eid in members:
                        f[eid] = 1
                elif f.get(e, 0) == 0:
                    for eid in members:
                        f[eid] = 0 if eid == e else 2
                else:
                    raise DecompositionError(
                        "normalization left two copies on a sub-1 edge")
    for _, f in terms:
        if not _term_is_connector(G, f):
            raise DecompositionError("repair broke a term; not a connector any more")
    cover: EdgeVector = {}
    for coeff, f in terms:
        for eid, m in f.items():
            cover[eid] = cover.get(eid, ZERO) + coeff * m
    class_edges = {eid for cls in classes.classes for eid in cls.edge_ids}
    for eid, v in cover.items():
        if v > xbar.get(eid, ZERO):
            raise DecompositionError(f"repair broke domination on e{eid}")
        if eid not in class_edges and v != xbar.get(eid, ZERO):
            raise DecompositionError(f"repair changed coverage off the classes on e{eid}")
    for a, b in two_cut_pairs(G, x):
        for _, f in terms:
            if (f.get(a, 0) + f.get(b, 0)) % 2 != 0:
                raise DecompositionError(f"odd crossing of the cut {{e{a},e{b}}}")
    terms = caratheodory_reduce(terms, G.m + 1)
    return make_combination(G, terms, dict(x), "dominated-by")
