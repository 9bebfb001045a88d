"""Exact rational LP layer: global min cut, membership oracles and the
cutting-plane subtour solver.

Separation for the subtour polyhedron is an exact Stoer-Wagner min cut over
rationals; T-odd cuts and the laminar 1-edge-cut family are separated by
direct enumeration at desk scale.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .graph import (Cut, CutFamily, EdgeMultiset, EdgeVector, GraphError,
                    Multigraph, connected_components, cut_edges, is_connected)
from .simplex import solve_lp

TJOIN_ENUMERATION_LIMIT = 14


class LpInputError(GraphError):
    pass


def min_cut(G: Multigraph, cap: EdgeVector) -> Tuple[Fraction, Tuple[int, ...]]:
    """Exact global minimum cut of the capacity vector (Stoer-Wagner)."""
    n = G.n
    if n < 2:
        raise LpInputError("min cut needs at least 2 vertices")
    for eid, c in cap.items():
        if c < 0:
            raise LpInputError("negative capacity")
    w = [[Fraction(0)] * n for _ in range(n)]
    for e in G.edges:
        c = cap.get(e.id, Fraction(0))
        if c:
            w[e.u][e.v] += c
            w[e.v][e.u] += c
    groups: List[List[int]] = [[v] for v in range(n)]
    active = list(range(n))
    best_value: Optional[Fraction] = None
    best_shore: Tuple[int, ...] = ()
    while len(active) > 1:
        # Minimum cut phase starting from the first active vertex.
        order = [active[0]]
        key = {v: w[active[0]][v] for v in active if v != active[0]}
        while key:
            pick = min(key, key=lambda v: (-key[v], v))
            order.append(pick)
            del key[pick]
            for v in key:
                key[v] += w[pick][v]
        t = order[-1]
        s = order[-2]
        phase_value = sum((w[t][v] for v in active if v != t), Fraction(0))
        if best_value is None or phase_value < best_value:
            best_value = phase_value
            best_shore = tuple(sorted(groups[t]))
        # Merge t into s.
        groups[s] = sorted(groups[s] + groups[t])
        for v in active:
            if v not in (s, t):
                w[s][v] += w[t][v]
                w[v][s] = w[s][v]
        active.remove(t)
    if 0 in best_shore:
        comp = sorted(set(range(n)) - set(best_shore))
        best_shore = tuple(comp) if comp else best_shore
    assert best_value is not None
    return best_value, best_shore


def brute_force_min_cut(G: Multigraph, cap: EdgeVector) -> Tuple[Fraction, Tuple[int, ...]]:
    """Reference oracle: exhaustive shore enumeration."""
    if G.n < 2:
        raise LpInputError("min cut needs at least 2 vertices")
    if G.n > 16:
        raise LpInputError("brute force min cut capped at n <= 16")
    best = None
    best_shore: Tuple[int, ...] = ()
    for mask in range(1, 1 << (G.n - 1)):
        shore = tuple(v for v in range(1, G.n) if mask & (1 << (v - 1)))
        value = sum((cap.get(eid, Fraction(0)) for eid in cut_edges(G, shore)), Fraction(0))
        if best is None or value < best:
            best = value
            best_shore = shore
    return best, best_shore


def one_edge_cuts(G: Multigraph, F: EdgeMultiset) -> List[Tuple[Tuple[int, ...], int]]:
    """1-edge cuts of the connector F: list of (shore, bridge edge id).

    A shore is reported once per bridge, canonicalized to the side avoiding
    vertex 0.
    """
    support = [e for e in G.edges if F.get(e.id, 0) > 0]
    cuts: List[Tuple[Tuple[int, ...], int]] = []
    for e in sorted(support, key=lambda e: e.id):
        if F.get(e.id, 0) != 1:
            continue
        rest = [(f.u, f.v) for f in support if f.id != e.id]
        comps = connected_components(G.n, rest)
        if len(comps) == 2:
            shore = comps[0] if 0 not in comps[0] else comps[1]
            cuts.append((tuple(shore), e.id))
        elif len(comps) > 2:
            raise LpInputError("F is not connected")
    return cuts


@dataclass(frozen=True)
class MembershipResult:
    polyhedron: str
    inside: bool
    shore: Optional[Tuple[int, ...]] = None
    value: Optional[Fraction] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.inside


def membership(G: Multigraph, x: EdgeVector, polyhedron: str,
               T: Optional[Set[int]] = None,
               F: Optional[EdgeMultiset] = None) -> MembershipResult:
    """Exact membership / separation for subtour, subtour-eq, tjoin-up, cover."""
    ids = set(G.edge_ids())
    for eid, value in x.items():
        if eid not in ids:
            raise LpInputError(f"vector supported outside the graph (e{eid})")
        if value < 0:
            return MembershipResult(polyhedron, False, detail=f"negative entry on e{eid}")
    if polyhedron in ("subtour", "subtour-eq"):
        if polyhedron == "subtour-eq":
            for v in range(G.n):
                deg = sum((x.get(eid, Fraction(0)) for eid in G.incident(v)), Fraction(0))
                if deg != 2:
                    return MembershipResult(polyhedron, False, shore=(v,), value=deg,
                                            detail=f"degree of vertex {v} is {deg}, not 2")
        value, shore = min_cut(G, x)
        if value < 2:
            return MembershipResult(polyhedron, False, shore=shore, value=value,
                                    detail=f"cut of value {value} < 2")
        return MembershipResult(polyhedron, True)
    if polyhedron == "tjoin-up":
        if T is None:
            raise LpInputError("tjoin-up needs T")
        if len(T) % 2 == 1:
            raise LpInputError("odd |T|")
        if not T:
            return MembershipResult(polyhedron, True)
        if G.n > TJOIN_ENUMERATION_LIMIT:
            raise LpInputError(
                f"T-odd cut enumeration capped at n <= {TJOIN_ENUMERATION_LIMIT}")
        for mask in range(1, 1 << (G.n - 1)):
            shore = tuple(v for v in range(1, G.n) if mask & (1 << (v - 1)))
            if len(set(shore) & T) % 2 == 0:
                continue
            value = sum((x.get(eid, Fraction(0)) for eid in cut_edges(G, shore)), Fraction(0))
            if value < 1:
                return MembershipResult(polyhedron, False, shore=shore, value=value,
                                        detail=f"T-odd cut of value {value} < 1")
        return MembershipResult(polyhedron, True)
    if polyhedron == "cover":
        if F is None:
            raise LpInputError("cover needs F")
        for shore, bridge in one_edge_cuts(G, F):
            value = sum((x.get(eid, Fraction(0)) for eid in cut_edges(G, shore)), Fraction(0))
            if value < 1:
                return MembershipResult(polyhedron, False, shore=shore, value=value,
                                        detail=f"1-edge cut of F at e{bridge} has value {value} < 1")
        return MembershipResult(polyhedron, True)
    raise LpInputError(f"unknown polyhedron {polyhedron!r}")


@dataclass(frozen=True)
class LpResult:
    value: Fraction
    x: EdgeVector
    cuts: Tuple[Cut, ...]          # constraint pool at termination
    separation_rounds: int

    def active_cuts(self) -> CutFamily:
        return CutFamily(self.cuts)


def _solve_over_cuts(G: Multigraph, shores: Sequence[Tuple[int, ...]]) -> Tuple[Fraction, EdgeVector]:
    ids = sorted(G.edge_ids())
    index = {eid: i for i, eid in enumerate(ids)}
    weight = {e.id: e.weight for e in G.edges}
    c = [weight[eid] for eid in ids]
    rows = []
    for shore in shores:
        a = [Fraction(0)] * len(ids)
        for eid in cut_edges(G, shore):
            a[index[eid]] += 1
        rows.append((a, ">=", Fraction(2)))
    sol = solve_lp(c, rows)
    x = {eid: sol.x[i] for i, eid in enumerate(ids) if sol.x[i] != 0}
    return sol.value, x


def solve_subtour(G: Multigraph) -> LpResult:
    """Exact optimum of the subtour elimination LP by cutting planes."""
    if G.n < 3:
        raise LpInputError("LP modules reject n < 3")
    if not is_connected(G):
        raise LpInputError("disconnected input")
    shores: List[Tuple[int, ...]] = [(v,) for v in range(1, G.n)] + [tuple(range(1, G.n))]
    seen = {cut_edges(G, s) for s in shores}
    rounds = 0
    while True:
        value, x = _solve_over_cuts(G, shores)
        mc_value, mc_shore = min_cut(G, x)
        if mc_value >= 2:
            break
        rounds += 1
        ids = cut_edges(G, mc_shore)
        if ids in seen:
            raise RuntimeError("separation returned a known cut; solver bug")
        seen.add(ids)
        shores.append(mc_shore)
    check = membership(G, x, "subtour")
    assert check.inside, "optimizer failed exact re-verification"
    cuts = tuple(Cut(tuple(sorted(shore)), cut_edges(G, shore)) for shore in shores)
    return LpResult(value=value, x=x, cuts=cuts, separation_rounds=rounds)


def brute_force_subtour(G: Multigraph) -> Tuple[Fraction, EdgeVector]:
    """Oracle: subtour LP over the full exponential shore family (n <= 8)."""
    if G.n > 8:
        raise LpInputError("full-family LP capped at n <= 8")
    if G.n < 3:
        raise LpInputError("LP modules reject n < 3")
    shores = []
    for mask in range(1, 1 << (G.n - 1)):
        shores.append(tuple(v for v in range(1, G.n) if mask & (1 << (v - 1))))
    seen = set()
    dedup = []
    for s in shores:
        ids = cut_edges(G, s)
        if ids not in seen:
            seen.add(ids)
            dedup.append(s)
    return _solve_over_cuts(G, dedup)


def everywhere(G: Multigraph, r: Fraction) -> EdgeVector:
    return {e.id: Fraction(r) for e in G.edges}
